//! The coefficient field.
//!
//! Everything in the crate is generic over [`Scalar`]. Exact work uses
//! [`Rational`](crate::Rational) (or [`BigRational`](crate::BigRational) when
//! coefficients can grow large); `f64` is accepted for quick numerical
//! experiments but equality is then only as good as floating point.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{Num, Signed};

pub trait Scalar: Num + Signed + Clone + PartialOrd + Debug + Display + Send + Sync + 'static {
    fn from_i64(n: i64) -> Self;

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::from_i64(numer) / Self::from_i64(denom)
    }

    /// Parses an unsigned decimal integer literal.
    fn parse_integer(digits: &str) -> Option<Self>;

    fn half() -> Self {
        Self::from_ratio(1, 2)
    }
}

impl Scalar for Rational64 {
    fn from_i64(n: i64) -> Self {
        Rational64::from_integer(n)
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Rational64::new(numer, denom)
    }

    fn parse_integer(digits: &str) -> Option<Self> {
        digits.parse::<i64>().ok().map(Rational64::from_integer)
    }
}

impl Scalar for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn parse_integer(digits: &str) -> Option<Self> {
        digits.parse::<BigInt>().ok().map(BigRational::from_integer)
    }
}

impl Scalar for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn parse_integer(digits: &str) -> Option<Self> {
        digits.parse::<f64>().ok()
    }
}

impl Scalar for f32 {
    fn from_i64(n: i64) -> Self {
        n as f32
    }

    fn parse_integer(digits: &str) -> Option<Self> {
        digits.parse::<f32>().ok()
    }
}

/// `(-1)^k` as a scalar.
pub(crate) fn sign<S: Scalar>(negative: bool) -> S {
    if negative {
        -S::one()
    } else {
        S::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_reduce_and_print_canonically() {
        let q = Rational64::from_ratio(6, -4);
        assert_eq!(q.to_string(), "-3/2");
        assert_eq!(Rational64::from_ratio(4, 2).to_string(), "2");
        let b = BigRational::from_ratio(2, 6);
        assert_eq!(b.to_string(), "1/3");
    }

    #[test]
    fn half_is_exact() {
        assert_eq!(Rational64::half() + Rational64::half(), Rational64::from_i64(1));
        assert_eq!(f64::half(), 0.5);
    }
}
