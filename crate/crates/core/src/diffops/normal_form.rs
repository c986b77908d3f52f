use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::operator::DiffOperator;
use super::order::HalfInt;
use crate::error::Result;
use crate::geometry::VectorField;
use crate::scalar::{sign, Scalar};
use crate::superalgebra::{ContactSpace, CoordKind, Monomial, Parity, ParityClass, SuperPolynomial};

/// The word `∂_z^c A_1^{i_1}…A_l^{i_l} B_1^{j_1}…B_l^{j_l} D̄_1^{t_1}…D̄_n^{t_n}`,
/// stored as `c` and `K = (I, J, T)` in that fixed order. Odd exponents are 0
/// or 1. The same index doubles as the moment monomial
/// `ζ^c α^I β^J γ^T` of the symbol spaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    c: u32,
    k: Vec<u32>,
}

impl Word {
    pub fn one(space: &ContactSpace) -> Self {
        Word {
            c: 0,
            k: vec![0; space.rank()],
        }
    }

    pub fn new(c: u32, k: Vec<u32>) -> Self {
        Word { c, k }
    }

    /// The single generator `T_r`-direction (`A`, `B` or `D̄`) with index `r >= 1`.
    pub fn generator(space: &ContactSpace, r: usize) -> Self {
        let mut w = Word::one(space);
        w.k[r - 1] = 1;
        w
    }

    pub fn dz_power(space: &ContactSpace, c: u32) -> Self {
        Word {
            c,
            k: vec![0; space.rank()],
        }
    }

    pub fn c(&self) -> u32 {
        self.c
    }

    pub fn k(&self) -> &[u32] {
        &self.k
    }

    /// Exponent of the `r`-th generator, `r >= 1`.
    pub fn exponent(&self, r: usize) -> u32 {
        self.k[r - 1]
    }

    pub fn k_len(&self) -> u32 {
        self.k.iter().sum()
    }

    /// Canonical degree `c + |K|`.
    pub fn canonical_degree(&self) -> u32 {
        self.c + self.k_len()
    }

    /// Heisenberg degree `c + |K|/2`.
    pub fn heisenberg_degree(&self) -> HalfInt {
        HalfInt::from_twice(2 * self.c + self.k_len())
    }

    pub fn parity(&self, space: &ContactSpace) -> Parity {
        Parity::from_count(self.k[2 * space.l()..].iter().sum())
    }

    /// Bit set of odd generators present.
    pub(crate) fn odd_mask(&self, space: &ContactSpace) -> u32 {
        self.k[2 * space.l()..]
            .iter()
            .enumerate()
            .fold(0, |acc, (j, &e)| if e > 0 { acc | (1 << j) } else { acc })
    }

    /// Number of `B` letters, which carry the sign `B_i = -T_{l+i}`.
    pub(crate) fn b_count(&self, space: &ContactSpace) -> u32 {
        self.k[space.l()..2 * space.l()].iter().sum()
    }

    fn render(&self, space: &ContactSpace, dz: &str, names: impl Fn(CoordKind) -> String) -> String {
        let mut parts = Vec::new();
        let push = |parts: &mut Vec<String>, name: String, e: u32| {
            if e == 1 {
                parts.push(name);
            } else if e > 1 {
                parts.push(format!("{name}^{e}"));
            }
        };
        push(&mut parts, dz.to_string(), self.c);
        for r in 1..=space.rank() {
            push(&mut parts, names(space.kind(r)), self.k[r - 1]);
        }
        parts.join("*")
    }

    /// `Dz^c*A1*B1*Dbar1`, empty for the identity.
    pub fn operator_name(&self, space: &ContactSpace) -> String {
        self.render(space, "Dz", |k| match k {
            CoordKind::X(i) => format!("A{i}"),
            CoordKind::Y(i) => format!("B{i}"),
            CoordKind::Theta(j) => format!("Dbar{j}"),
            CoordKind::Z => unreachable!(),
        })
    }

    /// `zeta^c*a1*b1*g1`, empty for the unit.
    pub fn moment_name(&self, space: &ContactSpace) -> String {
        self.render(space, "zeta", |k| match k {
            CoordKind::X(i) => format!("a{i}"),
            CoordKind::Y(i) => format!("b{i}"),
            CoordKind::Theta(j) => format!("g{j}"),
            CoordKind::Z => unreachable!(),
        })
    }
}

/// Ordered by canonical degree, then `|K|`, then `K`, then `c`.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_degree()
            .cmp(&other.canonical_degree())
            .then_with(|| self.k_len().cmp(&other.k_len()))
            .then_with(|| self.k.cmp(&other.k))
            .then_with(|| self.c.cmp(&other.c))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `T_r · T^K` rewritten as `Σ coeff · ∂_z^{dc} · T^{K'}` with `K'` in
/// canonical order, using `T_r T_j = (-1)^{r̃ j̃} T_j T_r - 2ω_{rj} ∂_z`.
/// Works in the `T`-basis (`T_{l+i} = -B_i`).
fn insert_generator(space: &ContactSpace, r: usize, k: &[u32]) -> Vec<(i64, u32, Vec<u32>)> {
    let first = k.iter().position(|&e| e > 0).map(|p| p + 1);
    match first {
        Some(j) if j < r => {
            let m = k[j - 1];
            let koszul = space.parity(r).koszul(space.parity(j));
            let s: i64 = if koszul { -1 } else { 1 };
            let mut rest = k.to_vec();
            rest[j - 1] = 0;
            let mut out = Vec::new();
            // T_r T_j^m R = s^m T_j^m (T_r R) + [T_r,T_j] (Σ_{p<m} s^p) T_j^{m-1} R
            let sm = if m.is_multiple_of(2) { 1 } else { s };
            for (c, dc, mut w) in insert_generator(space, r, &rest) {
                w[j - 1] = m;
                out.push((sm * c, dc, w));
            }
            let bracket = -2 * space.omega_lower(r, j);
            if bracket != 0 {
                let geometric: i64 = (0..m).map(|p| if p % 2 == 0 { 1 } else { s }).sum();
                let mut w = k.to_vec();
                w[j - 1] = m - 1;
                out.push((bracket * geometric, 1, w));
            }
            out
        }
        Some(j) if j == r && space.is_odd(r) => {
            // T_r T_r = ½[T_r, T_r] = -ω_{rr} ∂_z
            let mut w = k.to_vec();
            w[r - 1] = 0;
            vec![(-space.omega_lower(r, r), 1, w)]
        }
        _ => {
            let mut w = k.to_vec();
            w[r - 1] += 1;
            vec![(1, 0, w)]
        }
    }
}

/// Sums of `h ∂_z^c T^K` in the `T`-basis, used while rewriting.
struct TSum<S> {
    space: ContactSpace,
    terms: BTreeMap<Word, SuperPolynomial<S>>,
}

impl<S: Scalar> TSum<S> {
    fn identity(space: ContactSpace) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Word::one(&space), SuperPolynomial::one(space));
        TSum { space, terms }
    }

    fn add(&mut self, w: Word, h: SuperPolynomial<S>) {
        if h.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(h);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(&h);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `∂_z ∘ self`; `∂_z` commutes with every `T_r`.
    fn left_dz(&self) -> Self {
        let mut out = TSum {
            space: self.space,
            terms: BTreeMap::new(),
        };
        for (w, h) in &self.terms {
            out.add(w.clone(), h.dz());
            let mut up = w.clone();
            up.c += 1;
            out.add(up, h.clone());
        }
        out
    }

    /// `T_r ∘ self`, using `T_r ∘ h = T_r(h) + (-1)^{r̃ h̃} h T_r`.
    fn left_tangent(&self, r: usize) -> Self {
        let space = self.space;
        let r_odd = space.is_odd(r);
        let mut out = TSum {
            space,
            terms: BTreeMap::new(),
        };
        for (w, h) in &self.terms {
            out.add(w.clone(), crate::geometry::tangent_apply(r, h));
            let h_signed = if r_odd {
                let (he, ho) = h.split_parity();
                he - ho
            } else {
                h.clone()
            };
            for (c, dc, k) in insert_generator(&space, r, &w.k) {
                out.add(Word::new(w.c + dc, k), h_signed.scale(&S::from_i64(c)));
            }
        }
        out
    }

    fn left_mul_monomial(&self, m: &Monomial, c: &S) -> Self {
        let mut out = TSum {
            space: self.space,
            terms: BTreeMap::new(),
        };
        for (w, h) in &self.terms {
            out.add(w.clone(), h.mul_monomial_left(m, c));
        }
        out
    }

    fn merge(&mut self, other: Self) {
        for (w, h) in other.terms {
            self.add(w, h);
        }
    }
}

/// An operator written as `Σ D_{cK} ∂_z^c A^I B^J D̄^T`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalForm<S> {
    space: ContactSpace,
    source: S,
    target: S,
    terms: BTreeMap<Word, SuperPolynomial<S>>,
}

impl<S: Scalar> NormalForm<S> {
    pub fn zero(space: ContactSpace, source: S, target: S) -> Self {
        NormalForm {
            space,
            source,
            target,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        space: ContactSpace,
        source: S,
        target: S,
        terms: impl IntoIterator<Item = (Word, SuperPolynomial<S>)>,
    ) -> Result<Self> {
        let mut nf = Self::zero(space, source, target);
        for (w, h) in terms {
            space.check_same(&h.space())?;
            if w.k.len() != space.rank() {
                return Err(crate::Error::IndexOutOfRange {
                    index: w.k.len(),
                    space,
                });
            }
            if let Some(j) = (2 * space.l()..space.rank()).find(|&j| w.k[j] > 1) {
                return Err(crate::Error::IndexOutOfRange { index: j + 1, space });
            }
            nf.add_term(w, h);
        }
        Ok(nf)
    }

    pub(crate) fn add_term(&mut self, w: Word, h: SuperPolynomial<S>) {
        if h.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(h);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(&h);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Rewrites a coordinate-form operator: each `∂_{q^r}` becomes
    /// `T_r + ω_{kr} q^k ∂_z`, words are reordered with the distribution
    /// brackets and coefficients are pushed left.
    pub fn from_operator(d: &DiffOperator<S>) -> Self {
        let space = d.space();
        let mut nf = Self::zero(space, d.source().clone(), d.target().clone());
        for (idx, g) in d.terms() {
            let mut acc = TSum::identity(space);
            for &a in idx.letters().iter().rev() {
                acc = if a == 0 {
                    acc.left_dz()
                } else {
                    let k = space.omega_partner(a);
                    let w = S::from_i64(space.omega_lower(k, a));
                    let mut next = acc.left_tangent(a);
                    next.merge(acc.left_dz().left_mul_monomial(&Monomial::coordinate(&space, k), &w));
                    next
                };
            }
            for (w, h) in acc.terms {
                let s = sign::<S>(w.b_count(&space) % 2 == 1);
                nf.add_term(w, (g * &h).scale(&s));
            }
        }
        nf
    }

    /// Back to coordinate form by substituting `A_i = ∂_{x_i} + y_i ∂_z`,
    /// `B_i = -∂_{y_i} + x_i ∂_z`, `D̄_j = ∂_{θ_j} - θ_j ∂_z`.
    pub fn expand(&self) -> DiffOperator<S> {
        let space = self.space;
        let mut out = DiffOperator::zero(space, self.source.clone(), self.target.clone());
        for (w, h) in &self.terms {
            let mut op = DiffOperator::identity(space, self.source.clone(), self.source.clone());
            for r in (1..=space.rank()).rev() {
                for _ in 0..w.exponent(r) {
                    let k = space.omega_partner(r);
                    let shifted = op.left_derivative(0).left_mul(&SuperPolynomial::monomial(
                        space,
                        Monomial::coordinate(&space, k),
                        S::from_i64(space.omega_lower(k, r)),
                    ));
                    op = op.left_derivative(r);
                    op.add_assign_unchecked(&shifted, &-S::one());
                }
            }
            for _ in 0..w.c {
                op = op.left_derivative(0);
            }
            let s = sign::<S>(w.b_count(&space) % 2 == 1);
            out.add_assign_unchecked(&op.left_mul(h), &s);
        }
        out.with_weights(self.source.clone(), self.target.clone())
    }

    /// Evaluates the normal form directly on a superfunction by applying the
    /// fields `D̄`, `B`, `A`, `∂_z` right to left.
    pub fn apply_poly(&self, g: &SuperPolynomial<S>) -> Result<SuperPolynomial<S>> {
        let space = self.space;
        space.check_same(&g.space())?;
        let fields: Vec<VectorField<S>> = (1..=space.rank())
            .map(|r| {
                let t = VectorField::tangent(space, r).expect("in range");
                match space.kind(r) {
                    CoordKind::Y(_) => -&t,
                    _ => t,
                }
            })
            .collect();
        let mut out = SuperPolynomial::zero(space);
        for (w, h) in &self.terms {
            let mut v = g.clone();
            for r in (1..=space.rank()).rev() {
                for _ in 0..w.exponent(r) {
                    v = fields[r - 1].apply(&v)?;
                }
            }
            for _ in 0..w.c {
                v = v.dz();
            }
            out.add_assign_ref(&(h * &v));
        }
        Ok(out)
    }

    pub fn space(&self) -> ContactSpace {
        self.space
    }

    pub fn source(&self) -> &S {
        &self.source
    }

    pub fn target(&self) -> &S {
        &self.target
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &SuperPolynomial<S>)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Option<&SuperPolynomial<S>> {
        self.terms.get(w)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// `max (c + |K|)`, `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Word::canonical_degree).max()
    }

    /// `max (c + |K|/2)`, `None` for zero.
    pub fn heisenberg_order(&self) -> Option<HalfInt> {
        self.terms.keys().map(Word::heisenberg_degree).max()
    }

    /// `(order, heisenberg_order)`: the smallest `(k, d)` with the operator in `D^{k,d}`.
    pub fn bi_order(&self) -> Option<(u32, HalfInt)> {
        Some((self.order()?, self.heisenberg_order()?))
    }

    pub fn parity(&self) -> ParityClass {
        let mut acc = ParityClass::Zero;
        for (w, h) in &self.terms {
            let p = w.parity(&self.space);
            for m in h.monomials() {
                acc = acc.with(m.parity().plus(p));
            }
        }
        acc
    }

    /// Keeps the terms whose word satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&Word) -> bool) -> Self {
        NormalForm {
            space: self.space,
            source: self.source.clone(),
            target: self.target.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| keep(w))
                .map(|(w, h)| (w.clone(), h.clone()))
                .collect(),
        }
    }

    /// Flattened `(coefficient, coefficient monomial, word)` in printing order.
    pub fn flat_terms(&self) -> Vec<(S, Monomial, Word)> {
        self.terms
            .iter()
            .rev()
            .flat_map(|(w, h)| h.terms().rev().map(move |(m, c)| (c.clone(), m.clone(), w.clone())))
            .collect()
    }
}

impl<S: Scalar> DiffOperator<S> {
    pub fn normal_form(&self) -> NormalForm<S> {
        NormalForm::from_operator(self)
    }

    pub fn heisenberg_order(&self) -> Option<HalfInt> {
        self.normal_form().heisenberg_order()
    }

    pub fn bi_order(&self) -> Option<(u32, HalfInt)> {
        self.normal_form().bi_order()
    }
}

pub(crate) fn render_term(space: &ContactSpace, m: &Monomial, word: &str) -> String {
    match (m.is_one(), word.is_empty()) {
        (true, true) => "1".to_string(),
        (true, false) => word.to_string(),
        (false, true) => m.display(space),
        (false, false) => format!("{}*{}", m.display(space), word),
    }
}

impl<S: Scalar> fmt::Display for NormalForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let space = self.space;
        let mut out = String::new();
        let terms = self
            .flat_terms()
            .into_iter()
            .map(|(c, m, w)| (c, render_term(&space, &m, &w.operator_name(&space))));
        crate::text::write_sum(&mut out, terms);
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type P = SuperPolynomial<Rational>;
    type D = DiffOperator<Rational>;

    fn sp(l: usize, n: usize) -> ContactSpace {
        ContactSpace::new(l, n).unwrap()
    }

    fn zero() -> Rational {
        Rational::from_i64(0)
    }

    fn deriv(s: ContactSpace, a: usize) -> D {
        D::derivative(s, a, zero()).unwrap()
    }

    #[test]
    fn dx_is_a_minus_y_dz() {
        let s = sp(1, 1);
        let nf = deriv(s, 1).normal_form();
        assert_eq!(nf.to_string(), "A1 - y1*Dz");
        assert_eq!(nf.expand(), deriv(s, 1));
        assert_eq!(deriv(s, 2).normal_form().to_string(), "-B1 + x1*Dz");
        assert_eq!(deriv(s, 3).normal_form().to_string(), "Dbar1 + th1*Dz");
    }

    #[test]
    fn repeated_odd_generator_collapses() {
        // ∂_θ ∂_θ = 0 in coordinates, and (D̄ + θ∂_z)² = D̄² + … = 0 must come out.
        let s = sp(0, 1);
        let dbar = D::from_vector_field(&VectorField::tangent(s, 1).unwrap(), zero());
        let nf = dbar.compose(&dbar).unwrap().normal_form();
        assert_eq!(nf.to_string(), "-Dz");
    }

    #[test]
    fn insertion_reorders_with_brackets() {
        let s = sp(1, 0);
        // T_2 T_1 = T_1 T_2 - 2ω_{21} ∂_z = T_1 T_2 + 2∂_z
        let out = insert_generator(&s, 2, &[1, 0]);
        assert_eq!(out, vec![(1, 0, vec![1, 1]), (2, 1, vec![0, 0])]);
        // T_2 T_1² = T_1² T_2 + 4 T_1 ∂_z
        let out = insert_generator(&s, 2, &[2, 0]);
        assert_eq!(out, vec![(1, 0, vec![2, 1]), (4, 1, vec![1, 0])]);
    }

    #[test]
    fn orders_of_basic_words() {
        let s = sp(1, 1);
        let ab = NormalForm::from_terms(s, zero(), zero(), [(Word::new(0, vec![1, 1, 0]), P::one(s))]).unwrap();
        assert_eq!(ab.bi_order(), Some((2, HalfInt::from_int(1))));
        let dz = deriv(s, 0).normal_form();
        assert_eq!(dz.bi_order(), Some((1, HalfInt::from_int(1))));
        let dbar = NormalForm::from_terms(s, zero(), zero(), [(Word::generator(&s, 3), P::one(s))]).unwrap();
        assert_eq!(dbar.bi_order(), Some((1, HalfInt::HALF)));
        assert_eq!(NormalForm::<Rational>::zero(s, zero(), zero()).bi_order(), None);
    }

    #[test]
    fn dx_dy_round_trip_and_functional_equality() {
        let s = sp(1, 1);
        let d = deriv(s, 1).compose(&deriv(s, 2)).unwrap();
        let nf = d.normal_form();
        assert_eq!(nf.expand(), d);
        for m in Monomial::all_up_to_degree(&s, 3) {
            let g = P::monomial(s, m, Rational::from_i64(1));
            assert_eq!(nf.apply_poly(&g).unwrap(), d.apply_poly(&g).unwrap());
        }
    }
}
