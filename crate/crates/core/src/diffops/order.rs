use std::fmt;
use std::str::FromStr;

use serde::Serialize;

/// A nonnegative half-integer, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HalfInt(u32);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const HALF: HalfInt = HalfInt(1);

    pub fn from_twice(twice: u32) -> Self {
        HalfInt(twice)
    }

    pub fn from_int(n: u32) -> Self {
        HalfInt(2 * n)
    }

    pub fn twice(self) -> u32 {
        self.0
    }

    pub fn ceil(self) -> u32 {
        self.0.div_ceil(2)
    }

    pub fn is_integer(self) -> bool {
        self.0.is_multiple_of(2)
    }

    /// `self - 1/2`, or `None` at zero.
    pub fn pred(self) -> Option<HalfInt> {
        self.0.checked_sub(1).map(HalfInt)
    }

    pub fn succ(self) -> HalfInt {
        HalfInt(self.0 + 1)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseHalfIntError(String);

impl fmt::Display for ParseHalfIntError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "not a nonnegative half-integer: {:?}", self.0)
    }
}

impl std::error::Error for ParseHalfIntError {}

impl FromStr for HalfInt {
    type Err = ParseHalfIntError;

    /// Accepts `3`, `3/2`, `1.5`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseHalfIntError(s.to_string());
        let t = s.trim();
        if let Some((num, den)) = t.split_once('/') {
            let num: u32 = num.trim().parse().map_err(|_| err())?;
            match den.trim() {
                "1" => Ok(HalfInt(2 * num)),
                "2" => Ok(HalfInt(num)),
                _ => Err(err()),
            }
        } else if let Some((int, frac)) = t.split_once('.') {
            let int: u32 = int.parse().map_err(|_| err())?;
            match frac.trim_end_matches('0') {
                "" => Ok(HalfInt(2 * int)),
                "5" => Ok(HalfInt(2 * int + 1)),
                _ => Err(err()),
            }
        } else {
            t.parse::<u32>().map(|n| HalfInt(2 * n)).map_err(|_| err())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        for (text, twice, shown) in [
            ("0", 0, "0"),
            ("1/2", 1, "1/2"),
            ("3/2", 3, "3/2"),
            ("2", 4, "2"),
            ("2.5", 5, "5/2"),
            ("4/2", 4, "2"),
        ] {
            let h: HalfInt = text.parse().unwrap();
            assert_eq!(h.twice(), twice);
            assert_eq!(h.to_string(), shown);
        }
        assert!("1/3".parse::<HalfInt>().is_err());
        assert!("-1".parse::<HalfInt>().is_err());
    }

    #[test]
    fn ceiling() {
        assert_eq!(HalfInt::from_twice(3).ceil(), 2);
        assert_eq!(HalfInt::from_twice(4).ceil(), 2);
        assert_eq!(HalfInt::ZERO.ceil(), 0);
    }
}
