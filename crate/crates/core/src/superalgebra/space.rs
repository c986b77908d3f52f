use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// ℤ₂-grading of a homogeneous element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_count(count: u32) -> Self {
        if count.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn bit(self) -> u32 {
        self as u32
    }

    /// Parity of a product.
    pub fn plus(self, other: Parity) -> Parity {
        Parity::from_count(self.bit() + other.bit())
    }

    /// True when the Koszul sign `(-1)^{|a||b|}` is negative.
    pub fn koszul(self, other: Parity) -> bool {
        self.is_odd() && other.is_odd()
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Result of a parity query on a possibly inhomogeneous element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ParityClass {
    /// The zero element, which is homogeneous of both parities.
    Zero,
    Even,
    Odd,
    Mixed,
}

impl ParityClass {
    pub fn homogeneous(self) -> Option<Parity> {
        match self {
            ParityClass::Even => Some(Parity::Even),
            ParityClass::Odd => Some(Parity::Odd),
            _ => None,
        }
    }

    pub(crate) fn with(self, p: Parity) -> ParityClass {
        match (self, p) {
            (ParityClass::Zero, Parity::Even) => ParityClass::Even,
            (ParityClass::Zero, Parity::Odd) => ParityClass::Odd,
            (ParityClass::Even, Parity::Even) => ParityClass::Even,
            (ParityClass::Odd, Parity::Odd) => ParityClass::Odd,
            _ => ParityClass::Mixed,
        }
    }
}

impl fmt::Display for ParityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParityClass::Zero => "zero",
            ParityClass::Even => "even",
            ParityClass::Odd => "odd",
            ParityClass::Mixed => "mixed",
        })
    }
}

/// Which block of the generalized coordinates `q^A` an index falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoordKind {
    Z,
    X(usize),
    Y(usize),
    Theta(usize),
}

/// The superspace ℝ^(2l+1|n) in Darboux coordinates.
///
/// Generalized coordinates are indexed `A = 0..=2l+n`: `q^0 = z`,
/// `q^i = x_i`, `q^{l+i} = y_i`, `q^{2l+j} = θ_j`. Indices `r, s >= 1` run
/// over the distribution directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ContactSpace {
    l: usize,
    n: usize,
}

impl ContactSpace {
    pub fn new(l: usize, n: usize) -> Result<Self> {
        if n > 32 {
            return Err(Error::TooManyOddCoordinates(n));
        }
        Ok(ContactSpace { l, n })
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `2l + n`, the rank of the contact distribution.
    pub fn rank(&self) -> usize {
        2 * self.l + self.n
    }

    /// Number of generalized coordinates, `2l + n + 1`.
    pub fn num_coords(&self) -> usize {
        self.rank() + 1
    }

    pub fn num_even(&self) -> usize {
        2 * self.l + 1
    }

    /// Superdimension `2l + 1 - n`.
    pub fn superdimension(&self) -> i64 {
        2 * self.l as i64 + 1 - self.n as i64
    }

    pub fn check_index(&self, a: usize) -> Result<()> {
        if a < self.num_coords() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: a, space: *self })
        }
    }

    pub fn check_same(&self, other: &ContactSpace) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SpaceMismatch {
                left: *self,
                right: *other,
            })
        }
    }

    pub fn kind(&self, a: usize) -> CoordKind {
        let l = self.l;
        match a {
            0 => CoordKind::Z,
            a if a <= l => CoordKind::X(a),
            a if a <= 2 * l => CoordKind::Y(a - l),
            a => CoordKind::Theta(a - 2 * l),
        }
    }

    pub fn parity(&self, a: usize) -> Parity {
        if a > 2 * self.l {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn is_odd(&self, a: usize) -> bool {
        self.parity(a).is_odd()
    }

    /// `ω_{rs}` for `1 <= r, s <= 2l+n`.
    pub fn omega_lower(&self, r: usize, s: usize) -> i64 {
        let l = self.l;
        match (self.kind(r), self.kind(s)) {
            (CoordKind::X(i), CoordKind::Y(j)) if i == j => 1,
            (CoordKind::Y(i), CoordKind::X(j)) if i == j => -1,
            (CoordKind::Theta(i), CoordKind::Theta(j)) if i == j => 1,
            _ => {
                debug_assert!(r >= 1 && s >= 1 && r <= 2 * l + self.n && s <= 2 * l + self.n);
                0
            }
        }
    }

    /// `ω^{rs}`, the companion matrix with `(ω_{rs})(ω^{sk}) = δ_r^k`.
    pub fn omega_upper(&self, r: usize, s: usize) -> i64 {
        match (self.kind(r), self.kind(s)) {
            (CoordKind::X(i), CoordKind::Y(j)) if i == j => -1,
            (CoordKind::Y(i), CoordKind::X(j)) if i == j => 1,
            (CoordKind::Theta(i), CoordKind::Theta(j)) if i == j => 1,
            _ => 0,
        }
    }

    /// The unique `s` with `ω_{rs} != 0` (equivalently `ω^{rs} != 0`).
    pub fn omega_partner(&self, r: usize) -> usize {
        match self.kind(r) {
            CoordKind::X(i) => self.l + i,
            CoordKind::Y(i) => i,
            CoordKind::Theta(_) => r,
            CoordKind::Z => panic!("z has no symplectic partner"),
        }
    }

    pub fn omega_lower_matrix(&self) -> Vec<Vec<i64>> {
        let m = self.rank();
        (1..=m)
            .map(|r| (1..=m).map(|s| self.omega_lower(r, s)).collect())
            .collect()
    }

    pub fn omega_upper_matrix(&self) -> Vec<Vec<i64>> {
        let m = self.rank();
        (1..=m)
            .map(|r| (1..=m).map(|s| self.omega_upper(r, s)).collect())
            .collect()
    }

    /// Text name of coordinate `q^A`, as accepted by the expression parser.
    pub fn coordinate_name(&self, a: usize) -> String {
        match self.kind(a) {
            CoordKind::Z => "z".to_string(),
            CoordKind::X(i) => format!("x{i}"),
            CoordKind::Y(i) => format!("y{i}"),
            CoordKind::Theta(j) => format!("th{j}"),
        }
    }
}

impl fmt::Display for ContactSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R^({}|{})", 2 * self.l + 1, self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let m = a.len();
        (0..m)
            .map(|i| (0..m).map(|k| (0..m).map(|j| a[i][j] * b[j][k]).sum()).collect())
            .collect()
    }

    #[test]
    fn omega_blocks_are_inverse() {
        for (l, n) in [(0, 1), (1, 0), (1, 1), (2, 3), (3, 2)] {
            let space = ContactSpace::new(l, n).unwrap();
            let prod = mat_mul(&space.omega_lower_matrix(), &space.omega_upper_matrix());
            for (i, row) in prod.iter().enumerate() {
                for (k, v) in row.iter().enumerate() {
                    assert_eq!(*v, i64::from(i == k), "({l},{n}) entry {i},{k}");
                }
            }
        }
    }

    #[test]
    fn omega_upper_is_graded_antisymmetric() {
        let space = ContactSpace::new(2, 3).unwrap();
        for r in 1..=space.rank() {
            for s in 1..=space.rank() {
                let sign = if space.parity(r).koszul(space.parity(s)) { -1 } else { 1 };
                assert_eq!(space.omega_upper(r, s), -sign * space.omega_upper(s, r));
            }
        }
    }

    #[test]
    fn omega_lower_block_form() {
        let space = ContactSpace::new(1, 1).unwrap();
        assert_eq!(
            space.omega_lower_matrix(),
            vec![vec![0, 1, 0], vec![-1, 0, 0], vec![0, 0, 1]]
        );
        assert_eq!(
            space.omega_upper_matrix(),
            vec![vec![0, -1, 0], vec![1, 0, 0], vec![0, 0, 1]]
        );
    }

    #[test]
    fn coordinate_table() {
        let space = ContactSpace::new(2, 1).unwrap();
        let names: Vec<_> = (0..space.num_coords()).map(|a| space.coordinate_name(a)).collect();
        assert_eq!(names, ["z", "x1", "x2", "y1", "y2", "th1"]);
        assert_eq!(space.superdimension(), 4);
        assert!(space.check_index(6).is_err());
    }
}
