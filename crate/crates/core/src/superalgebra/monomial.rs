use std::cmp::Ordering;
use std::fmt::Write;

use super::space::{ContactSpace, Parity};

/// A monomial `z^a x^b y^c θ_{j1}…θ_{jm}` with `j1 < … < jm`.
///
/// Even exponents are indexed like the coordinates (`0` is `z`, then the
/// `x`'s, then the `y`'s); the odd part is a bit set, bit `j-1` for `θ_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    even: Vec<u32>,
    odd: u32,
}

/// Number of transpositions needed to sort the concatenation `a ++ b` of
/// two increasing odd index sets, mod 2.
pub(crate) fn merge_sign(a: u32, b: u32) -> bool {
    let mut count = 0;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        count += (a >> j >> 1).count_ones();
        rest &= rest - 1;
    }
    count % 2 == 1
}

impl Monomial {
    pub fn one(space: &ContactSpace) -> Self {
        Monomial {
            even: vec![0; space.num_even()],
            odd: 0,
        }
    }

    pub fn from_parts(even: Vec<u32>, odd: u32) -> Self {
        Monomial { even, odd }
    }

    /// The coordinate `q^A` as a monomial.
    pub fn coordinate(space: &ContactSpace, a: usize) -> Self {
        let mut m = Monomial::one(space);
        if space.is_odd(a) {
            m.odd = 1 << (a - space.num_even());
        } else {
            m.even[a] = 1;
        }
        m
    }

    pub fn even_exponents(&self) -> &[u32] {
        &self.even
    }

    pub fn odd_mask(&self) -> u32 {
        self.odd
    }

    /// Exponent of coordinate `q^A` (0 or 1 for odd coordinates).
    pub fn exponent(&self, space: &ContactSpace, a: usize) -> u32 {
        if space.is_odd(a) {
            (self.odd >> (a - space.num_even())) & 1
        } else {
            self.even[a]
        }
    }

    pub fn degree(&self) -> u32 {
        self.even.iter().sum::<u32>() + self.odd.count_ones()
    }

    /// Degree with `z` counted twice, the grading under which contact
    /// fields of `1, q, qq, z, zq, z²` form `spo`.
    pub fn weighted_degree(&self) -> u32 {
        self.degree() + self.even[0]
    }

    pub fn is_one(&self) -> bool {
        self.odd == 0 && self.even.iter().all(|&e| e == 0)
    }

    pub fn parity(&self) -> Parity {
        Parity::from_count(self.odd.count_ones())
    }

    /// Product; `None` if an odd generator repeats. The flag is true when
    /// reordering the odd generators produced a minus sign.
    pub fn mul(&self, other: &Monomial) -> Option<(Monomial, bool)> {
        if self.odd & other.odd != 0 {
            return None;
        }
        let even = self.even.iter().zip(&other.even).map(|(a, b)| a + b).collect();
        Some((
            Monomial {
                even,
                odd: self.odd | other.odd,
            },
            merge_sign(self.odd, other.odd),
        ))
    }

    /// Left derivative `∂_{q^A}`: returns (multiplicity, negative, result).
    pub fn partial(&self, space: &ContactSpace, a: usize) -> Option<(u32, bool, Monomial)> {
        if space.is_odd(a) {
            let bit = 1u32 << (a - space.num_even());
            if self.odd & bit == 0 {
                return None;
            }
            let before = (self.odd & (bit - 1)).count_ones();
            let mut m = self.clone();
            m.odd &= !bit;
            Some((1, before % 2 == 1, m))
        } else {
            let e = self.even[a];
            if e == 0 {
                return None;
            }
            let mut m = self.clone();
            m.even[a] -= 1;
            Some((e, false, m))
        }
    }

    /// Every monomial of total degree `<= max_degree`, ascending.
    pub fn all_up_to_degree(space: &ContactSpace, max_degree: u32) -> Vec<Monomial> {
        let ne = space.num_even();
        let mut out = Vec::new();
        let mut even = vec![0u32; ne];
        fn rec(i: usize, left: u32, even: &mut Vec<u32>, acc: &mut Vec<Vec<u32>>) {
            if i == even.len() {
                acc.push(even.clone());
                return;
            }
            for e in 0..=left {
                even[i] = e;
                rec(i + 1, left - e, even, acc);
            }
            even[i] = 0;
        }
        let mut evens = Vec::new();
        rec(0, max_degree, &mut even, &mut evens);
        for e in evens {
            let deg: u32 = e.iter().sum();
            for odd in 0u32..(1u32 << space.n()) {
                if deg + odd.count_ones() <= max_degree {
                    out.push(Monomial::from_parts(e.clone(), odd));
                }
            }
        }
        out.sort();
        out
    }

    pub fn write_to(&self, space: &ContactSpace, out: &mut String) {
        let mut first = true;
        let mut sep = |out: &mut String| {
            if !first {
                out.push('*');
            }
            first = false;
        };
        for (a, &e) in self.even.iter().enumerate() {
            if e == 0 {
                continue;
            }
            sep(out);
            out.push_str(&space.coordinate_name(a));
            if e > 1 {
                let _ = write!(out, "^{e}");
            }
        }
        let mut rest = self.odd;
        while rest != 0 {
            let j = rest.trailing_zeros() as usize;
            sep(out);
            out.push_str(&space.coordinate_name(space.num_even() + j));
            rest &= rest - 1;
        }
        if first {
            out.push('1');
        }
    }

    pub fn display(&self, space: &ContactSpace) -> String {
        let mut s = String::new();
        self.write_to(space, &mut s);
        s
    }
}

/// Graded-lexicographic: total degree, then `z`, `x`, `y` exponents, then
/// the odd subset read as an exponent vector. Larger compares greater.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.even.cmp(&other.even))
            .then_with(|| {
                let diff = self.odd ^ other.odd;
                if diff == 0 {
                    Ordering::Equal
                } else if self.odd & diff & diff.wrapping_neg() != 0 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_sign_counts_inversions() {
        // θ2 · θ1 = -θ1θ2
        assert!(merge_sign(0b10, 0b01));
        assert!(!merge_sign(0b01, 0b10));
        // θ2θ3 · θ1: θ1 passes two generators
        assert!(!merge_sign(0b110, 0b001));
        // θ1θ3 · θ2
        assert!(merge_sign(0b101, 0b010));
    }

    #[test]
    fn odd_partial_sign_is_positional() {
        let space = ContactSpace::new(0, 3).unwrap();
        let m = Monomial::from_parts(vec![0], 0b111);
        let (_, neg, rest) = m.partial(&space, 2).unwrap();
        assert!(neg);
        assert_eq!(rest.odd_mask(), 0b101);
        let (_, neg, _) = m.partial(&space, 1).unwrap();
        assert!(!neg);
        let (_, neg, _) = m.partial(&space, 3).unwrap();
        assert!(!neg);
    }

    #[test]
    fn enumeration_counts() {
        // (l, n) = (1, 1): even generators z, x, y; one odd θ.
        let space = ContactSpace::new(1, 1).unwrap();
        let all = Monomial::all_up_to_degree(&space, 2);
        // degree 0: 1; degree 1: 4; degree 2: 6 even-even + 3 even·θ
        assert_eq!(all.len(), 1 + 4 + 9);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn ordering_is_graded() {
        let space = ContactSpace::new(1, 2).unwrap();
        let z = Monomial::coordinate(&space, 0);
        let x = Monomial::coordinate(&space, 1);
        let th1 = Monomial::coordinate(&space, 3);
        let th2 = Monomial::coordinate(&space, 4);
        let zz = z.mul(&z).unwrap().0;
        assert!(zz > x);
        assert!(z > x);
        assert!(x > th1);
        assert!(th1 > th2);
        assert_eq!(zz.display(&space), "z^2");
    }
}
