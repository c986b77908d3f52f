use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::monomial::Monomial;
use super::space::{ContactSpace, Parity, ParityClass};
use crate::error::Result;
use crate::scalar::{sign, Scalar};

/// A polynomial superfunction on ℝ^(2l+1|n) with exact coefficients.
///
/// Terms are kept canonical: no zero coefficients, odd generators sorted,
/// so structural equality is equality of superfunctions.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperPolynomial<S> {
    space: ContactSpace,
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> SuperPolynomial<S> {
    pub fn zero(space: ContactSpace) -> Self {
        SuperPolynomial {
            space,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(space: ContactSpace) -> Self {
        Self::constant(space, S::one())
    }

    pub fn constant(space: ContactSpace, c: S) -> Self {
        Self::monomial(space, Monomial::one(&space), c)
    }

    pub fn monomial(space: ContactSpace, m: Monomial, c: S) -> Self {
        let mut p = Self::zero(space);
        p.add_term(m, c);
        p
    }

    /// The coordinate function `q^A`.
    pub fn coordinate(space: ContactSpace, a: usize) -> Result<Self> {
        space.check_index(a)?;
        Ok(Self::monomial(space, Monomial::coordinate(&space, a), S::one()))
    }

    pub fn from_terms(space: ContactSpace, terms: impl IntoIterator<Item = (Monomial, S)>) -> Self {
        let mut p = Self::zero(space);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn space(&self) -> ContactSpace {
        self.space
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    /// The constant term.
    pub fn constant_term(&self) -> S {
        self.coefficient(&Monomial::one(&self.space))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn add_term(&mut self, m: Monomial, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        self.assert_space(other);
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Self, c: &S) {
        self.assert_space(other);
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v.clone() * c.clone());
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.space);
        }
        SuperPolynomial {
            space: self.space,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.space.check_same(&other.space)?;
        let mut out = self.clone();
        out.add_assign_ref(other);
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.space.check_same(&other.space)?;
        let mut out = Self::zero(self.space);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((m, neg)) = a.mul(b) {
                    out.add_term(m, sign::<S>(neg) * ca.clone() * cb.clone());
                }
            }
        }
        Ok(out)
    }

    /// Multiplies by a single monomial on the left.
    pub fn mul_monomial_left(&self, m: &Monomial, c: &S) -> Self {
        let mut out = Self::zero(self.space);
        for (b, cb) in &self.terms {
            if let Some((p, neg)) = m.mul(b) {
                out.add_term(p, sign::<S>(neg) * c.clone() * cb.clone());
            }
        }
        out
    }

    /// Left partial derivative `∂_{q^A}`.
    pub fn partial(&self, a: usize) -> Result<Self> {
        self.space.check_index(a)?;
        let mut out = Self::zero(self.space);
        for (m, c) in &self.terms {
            if let Some((k, neg, d)) = m.partial(&self.space, a) {
                out.add_term(d, sign::<S>(neg) * S::from_i64(i64::from(k)) * c.clone());
            }
        }
        Ok(out)
    }

    /// `∂_z`, which is always in range.
    pub fn dz(&self) -> Self {
        self.partial(0).expect("z is always a coordinate")
    }

    pub fn parity(&self) -> ParityClass {
        self.terms.keys().fold(ParityClass::Zero, |acc, m| acc.with(m.parity()))
    }

    /// Splits into (even part, odd part).
    pub fn split_parity(&self) -> (Self, Self) {
        let mut even = Self::zero(self.space);
        let mut odd = Self::zero(self.space);
        for (m, c) in &self.terms {
            let target = if m.parity().is_odd() { &mut odd } else { &mut even };
            target.terms.insert(m.clone(), c.clone());
        }
        (even, odd)
    }

    /// Nonzero homogeneous parts with their parities.
    pub fn homogeneous_parts(&self) -> Vec<(Parity, Self)> {
        let (even, odd) = self.split_parity();
        let mut parts = Vec::with_capacity(2);
        if !even.is_zero() {
            parts.push((Parity::Even, even));
        }
        if !odd.is_zero() {
            parts.push((Parity::Odd, odd));
        }
        parts
    }

    /// Total degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    fn assert_space(&self, other: &Self) {
        if let Err(e) = self.space.check_same(&other.space) {
            panic!("{e}");
        }
    }
}

impl<S: Scalar> fmt::Display for SuperPolynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        let space = self.space;
        crate::text::write_sum(
            &mut out,
            self.terms.iter().rev().map(|(m, c)| (c.clone(), m.display(&space))),
        );
        f.write_str(&out)
    }
}

impl<S: Scalar> Add for &SuperPolynomial<S> {
    type Output = SuperPolynomial<S>;

    fn add(self, rhs: Self) -> SuperPolynomial<S> {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl<S: Scalar> Sub for &SuperPolynomial<S> {
    type Output = SuperPolynomial<S>;

    fn sub(self, rhs: Self) -> SuperPolynomial<S> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-S::one());
        out
    }
}

impl<S: Scalar> Neg for &SuperPolynomial<S> {
    type Output = SuperPolynomial<S>;

    fn neg(self) -> SuperPolynomial<S> {
        self.scale(&-S::one())
    }
}

/// Panics on mismatched spaces; use [`SuperPolynomial::checked_mul`] to get an error instead.
impl<S: Scalar> Mul for &SuperPolynomial<S> {
    type Output = SuperPolynomial<S>;

    fn mul(self, rhs: Self) -> SuperPolynomial<S> {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<S: Scalar> Add for SuperPolynomial<S> {
    type Output = SuperPolynomial<S>;

    fn add(mut self, rhs: Self) -> SuperPolynomial<S> {
        self.add_assign_ref(&rhs);
        self
    }
}

impl<S: Scalar> Sub for SuperPolynomial<S> {
    type Output = SuperPolynomial<S>;

    fn sub(mut self, rhs: Self) -> SuperPolynomial<S> {
        self.add_scaled(&rhs, &-S::one());
        self
    }
}

impl<S: Scalar> Neg for SuperPolynomial<S> {
    type Output = SuperPolynomial<S>;

    fn neg(self) -> SuperPolynomial<S> {
        self.scale(&-S::one())
    }
}

impl<S: Scalar> Mul for SuperPolynomial<S> {
    type Output = SuperPolynomial<S>;

    fn mul(self, rhs: Self) -> SuperPolynomial<S> {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type P = SuperPolynomial<Rational>;

    fn q(space: ContactSpace, a: usize) -> P {
        P::coordinate(space, a).unwrap()
    }

    fn sp(l: usize, n: usize) -> ContactSpace {
        ContactSpace::new(l, n).unwrap()
    }

    #[test]
    fn odd_generators_anticommute() {
        let s = sp(1, 2);
        let (t1, t2) = (q(s, 3), q(s, 4));
        assert_eq!((&t1 * &t2).to_string(), "th1*th2");
        assert_eq!((&t2 * &t1).to_string(), "-th1*th2");
        assert!((&t1 * &t1).is_zero());
    }

    #[test]
    fn partial_derivatives() {
        let s = sp(1, 2);
        let z = q(s, 0);
        let x = q(s, 1);
        let p = &(&z * &z) * &x;
        assert_eq!(p.partial(0).unwrap().to_string(), "2*z*x1");
        let tt = &q(s, 3) * &q(s, 4);
        assert_eq!(tt.partial(3).unwrap().to_string(), "th2");
        assert_eq!(tt.partial(4).unwrap().to_string(), "-th1");
        assert!(p.partial(5).is_err());
    }

    #[test]
    fn parity_classes() {
        let s = sp(1, 1);
        assert_eq!((&q(s, 1) * &q(s, 2)).parity(), ParityClass::Even);
        assert_eq!(q(s, 3).parity(), ParityClass::Odd);
        assert_eq!((&q(s, 1) + &q(s, 3)).parity(), ParityClass::Mixed);
        assert_eq!(P::zero(s).parity(), ParityClass::Zero);
    }

    #[test]
    fn mismatched_spaces_error() {
        let a = P::one(sp(1, 1));
        let b = P::one(sp(1, 2));
        assert!(a.checked_mul(&b).is_err());
        assert!(a.checked_add(&b).is_err());
    }

    #[test]
    fn negation_cancels() {
        let s = sp(1, 1);
        let p = &(&q(s, 0) * &q(s, 3)) + &q(s, 2);
        assert!((&p + &(-&p)).is_zero());
    }
}
