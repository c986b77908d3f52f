use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::densities::Density;
use crate::error::{Error, Result};
use crate::geometry::{contact_field, VectorField};
use crate::scalar::{sign, Scalar};
use crate::superalgebra::{ContactSpace, Monomial, Parity, ParityClass, SuperPolynomial};

/// Derivative multi-index `I = (i_0, …, i_{2l+n})` standing for
/// `∂_z^{i_0} ∂_{x_1}^{i_1} … ∂_{θ_n}^{i_{2l+n}}`; odd entries are 0 or 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn zero(space: &ContactSpace) -> Self {
        MultiIndex(vec![0; space.num_coords()])
    }

    pub fn new(space: &ContactSpace, exponents: Vec<u32>) -> Result<Self> {
        if exponents.len() != space.num_coords() {
            return Err(Error::IndexOutOfRange {
                index: exponents.len(),
                space: *space,
            });
        }
        if let Some(a) = (0..exponents.len()).find(|&a| space.is_odd(a) && exponents[a] > 1) {
            return Err(Error::IndexOutOfRange {
                index: a,
                space: *space,
            });
        }
        Ok(MultiIndex(exponents))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of odd derivatives.
    pub fn odd_count(&self, space: &ContactSpace) -> u32 {
        self.0[space.num_even()..].iter().sum()
    }

    /// Coordinate indices in application order, e.g. `∂_z² ∂_{x_1}` → `[0, 0, 1]`.
    pub fn letters(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(a, &e)| std::iter::repeat_n(a, e as usize))
            .collect()
    }

    fn display(&self, space: &ContactSpace) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(a, &e)| {
                let name = format!("D{}", space.coordinate_name(a));
                if e > 1 {
                    format!("{name}^{e}")
                } else {
                    name
                }
            })
            .collect();
        parts.join("*")
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order().cmp(&other.order()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A differential operator `Σ_I D_I ∂^I` from `λ`-densities to `μ`-densities,
/// coefficients on the left.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffOperator<S> {
    space: ContactSpace,
    source: S,
    target: S,
    terms: BTreeMap<MultiIndex, SuperPolynomial<S>>,
}

impl<S: Scalar> DiffOperator<S> {
    pub fn zero(space: ContactSpace, source: S, target: S) -> Self {
        DiffOperator {
            space,
            source,
            target,
            terms: BTreeMap::new(),
        }
    }

    /// Multiplication by `g`.
    pub fn multiplication(g: SuperPolynomial<S>, source: S, target: S) -> Self {
        let space = g.space();
        let mut d = Self::zero(space, source, target);
        d.add_term(MultiIndex::zero(&space), g);
        d
    }

    pub fn identity(space: ContactSpace, source: S, target: S) -> Self {
        Self::multiplication(SuperPolynomial::one(space), source, target)
    }

    /// `∂_{q^A}` acting on `λ`-densities.
    pub fn derivative(space: ContactSpace, a: usize, weight: S) -> Result<Self> {
        space.check_index(a)?;
        let mut idx = vec![0; space.num_coords()];
        idx[a] = 1;
        let mut d = Self::zero(space, weight.clone(), weight);
        d.add_term(MultiIndex(idx), SuperPolynomial::one(space));
        Ok(d)
    }

    /// A vector field viewed as a first-order operator `λ → λ`.
    pub fn from_vector_field(x: &VectorField<S>, weight: S) -> Self {
        let space = x.space();
        let mut d = Self::zero(space, weight.clone(), weight);
        for (a, c) in x.components().iter().enumerate() {
            let mut idx = vec![0; space.num_coords()];
            idx[a] = 1;
            d.add_term(MultiIndex(idx), c.clone());
        }
        d
    }

    /// `L_{X_f}^λ = X_f + λ f'` as an operator `λ → λ`.
    pub fn contact_operator(f: &SuperPolynomial<S>, weight: S) -> Self {
        let mut d = Self::from_vector_field(&contact_field(f), weight.clone());
        d.add_term(MultiIndex::zero(&f.space()), f.dz().scale(&weight));
        d
    }

    pub fn from_terms(
        space: ContactSpace,
        source: S,
        target: S,
        terms: impl IntoIterator<Item = (MultiIndex, SuperPolynomial<S>)>,
    ) -> Result<Self> {
        let mut d = Self::zero(space, source, target);
        for (i, c) in terms {
            space.check_same(&c.space())?;
            MultiIndex::new(&space, i.0.clone())?;
            d.add_term(i, c);
        }
        Ok(d)
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

    /// `δ = μ - λ`.
    pub fn shift(&self) -> S {
        self.target.clone() - self.source.clone()
    }

    /// Same coefficients, reinterpreted between other weights.
    pub fn with_weights(mut self, source: S, target: S) -> Self {
        self.source = source;
        self.target = target;
        self
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&MultiIndex, &SuperPolynomial<S>)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, i: &MultiIndex) -> Option<&SuperPolynomial<S>> {
        self.terms.get(i)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub(crate) fn add_term(&mut self, i: MultiIndex, c: SuperPolynomial<S>) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(i) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(&c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        self.space.check_same(&other.space)?;
        for (a, b) in [(&self.source, &other.source), (&self.target, &other.target)] {
            if a != b {
                return Err(Error::WeightMismatch {
                    expected: a.to_string(),
                    found: b.to_string(),
                });
            }
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.add_assign_unchecked(other, &S::one());
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.add_assign_unchecked(other, &-S::one());
        Ok(out)
    }

    pub(crate) fn add_assign_unchecked(&mut self, other: &Self, c: &S) {
        for (i, p) in &other.terms {
            self.add_term(i.clone(), p.scale(c));
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.space, self.source.clone(), self.target.clone());
        out.add_assign_unchecked(self, c);
        out
    }

    /// `h ∘ D`.
    pub fn left_mul(&self, h: &SuperPolynomial<S>) -> Self {
        let mut out = Self::zero(self.space, self.source.clone(), self.target.clone());
        for (i, p) in &self.terms {
            out.add_term(i.clone(), h * p);
        }
        out
    }

    /// `∂_{q^A} ∘ D`, restored to coordinate form with the graded Leibniz rule.
    pub fn left_derivative(&self, a: usize) -> Self {
        let space = self.space;
        let a_odd = space.is_odd(a);
        let mut out = Self::zero(space, self.source.clone(), self.target.clone());
        for (idx, h) in &self.terms {
            out.add_term(idx.clone(), h.partial(a).expect("index in range"));
            if a_odd && idx.0[a] == 1 {
                continue;
            }
            // ∂_A passes the odd derivatives standing before it.
            let passed: u32 = if a_odd {
                (space.num_even()..a).map(|b| idx.0[b]).sum()
            } else {
                0
            };
            let mut next = idx.0.clone();
            next[a] += 1;
            let mut coeff = SuperPolynomial::zero(space);
            for (m, c) in h.terms() {
                let neg = (a_odd && m.parity().is_odd()) ^ (passed % 2 == 1);
                coeff.add_term(m.clone(), sign::<S>(neg) * c.clone());
            }
            out.add_term(MultiIndex(next), coeff);
        }
        out
    }

    /// `self ∘ inner`; requires `inner.target == self.source`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.space.check_same(&inner.space)?;
        if self.source != inner.target {
            return Err(Error::WeightMismatch {
                expected: self.source.to_string(),
                found: inner.target.to_string(),
            });
        }
        let mut out = Self::zero(self.space, inner.source.clone(), self.target.clone());
        let mut cache: BTreeMap<Vec<usize>, Self> = BTreeMap::new();
        for (idx, g) in &self.terms {
            let letters = idx.letters();
            let applied = cache.entry(letters.clone()).or_insert_with(|| {
                letters
                    .iter()
                    .rev()
                    .fold(inner.clone(), |acc, &a| acc.left_derivative(a))
            });
            for (j, p) in &applied.terms {
                out.add_term(j.clone(), g * p);
            }
        }
        Ok(out)
    }

    /// Applies `Σ D_I ∂^I` to a superfunction.
    pub fn apply_poly(&self, g: &SuperPolynomial<S>) -> Result<SuperPolynomial<S>> {
        self.space.check_same(&g.space())?;
        let mut out = SuperPolynomial::zero(self.space);
        for (idx, c) in &self.terms {
            let mut v = g.clone();
            for &a in idx.letters().iter().rev() {
                v = v.partial(a)?;
                if v.is_zero() {
                    break;
                }
            }
            if !v.is_zero() {
                out.add_assign_ref(&(c * &v));
            }
        }
        Ok(out)
    }

    /// `g α^λ ↦ D(g) α^μ`.
    pub fn apply(&self, d: &Density<S>) -> Result<Density<S>> {
        if d.weight() != &self.source {
            return Err(Error::WeightMismatch {
                expected: self.source.to_string(),
                found: d.weight().to_string(),
            });
        }
        let value = self.apply_poly(d.value())?;
        Ok(Density::new(value, self.target.clone(), d.kind()))
    }

    /// Parity of `D_I ∂^I` is `|D_I| + #odd derivatives`.
    pub fn parity(&self) -> ParityClass {
        let mut acc = ParityClass::Zero;
        for (idx, c) in &self.terms {
            let p = Parity::from_count(idx.odd_count(&self.space));
            for m in c.monomials() {
                acc = acc.with(m.parity().plus(p));
            }
        }
        acc
    }

    pub fn homogeneous_parts(&self) -> Vec<(Parity, Self)> {
        let mut even = Self::zero(self.space, self.source.clone(), self.target.clone());
        let mut odd = even.clone();
        for (idx, c) in &self.terms {
            let shift = idx.odd_count(&self.space) % 2 == 1;
            let (ce, co) = c.split_parity();
            let (e, o) = if shift { (co, ce) } else { (ce, co) };
            even.add_term(idx.clone(), e);
            odd.add_term(idx.clone(), o);
        }
        [(Parity::Even, even), (Parity::Odd, odd)]
            .into_iter()
            .filter(|(_, d)| !d.is_zero())
            .collect()
    }

    /// Canonical order `max |I|`; `None` stands for `-∞` (the zero operator).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::order).max()
    }

    /// The derivation `Σ D_A ∂_A` when every term has order exactly one.
    pub fn to_vector_field(&self) -> Result<VectorField<S>> {
        let mut coeffs = vec![SuperPolynomial::zero(self.space); self.space.num_coords()];
        for (idx, c) in &self.terms {
            match idx.letters()[..] {
                [a] => coeffs[a] = c.clone(),
                _ => return Err(Error::NotVectorField(self.to_string())),
            }
        }
        VectorField::from_components(self.space, coeffs)
    }

    /// Monomial terms `(coefficient, coefficient monomial, derivative index)`
    /// in printing order.
    pub fn flat_terms(&self) -> Vec<(S, Monomial, MultiIndex)> {
        self.terms
            .iter()
            .rev()
            .flat_map(|(i, c)| c.terms().rev().map(move |(m, v)| (v.clone(), m.clone(), i.clone())))
            .collect()
    }
}

impl<S: Scalar> fmt::Display for DiffOperator<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let space = self.space;
        let mut out = String::new();
        let terms = self.flat_terms().into_iter().map(|(c, m, i)| {
            let d = i.display(&space);
            let body = match (m.is_one(), d.is_empty()) {
                (true, true) => "1".to_string(),
                (true, false) => d,
                (false, true) => m.display(&space),
                (false, false) => format!("{}*{}", m.display(&space), d),
            };
            (c, body)
        });
        crate::text::write_sum(&mut out, terms);
        f.write_str(&out)
    }
}

/// `ℒ_{X_f}^{λμ} D = L_{X_f}^μ ∘ D - (-1)^{f̃ D̃} D ∘ L_{X_f}^λ`, split into
/// homogeneous parts of `f` and `D`.
pub fn lie_derivative<S: Scalar>(f: &SuperPolynomial<S>, d: &DiffOperator<S>) -> Result<DiffOperator<S>> {
    d.space.check_same(&f.space())?;
    let mut out = DiffOperator::zero(d.space, d.source.clone(), d.target.clone());
    let d_parts = d.homogeneous_parts();
    for (pf, fpart) in f.homogeneous_parts() {
        let l_target = DiffOperator::contact_operator(&fpart, d.target.clone());
        let l_source = DiffOperator::contact_operator(&fpart, d.source.clone());
        for (pd, dpart) in &d_parts {
            let left = l_target.compose(dpart)?;
            let right = dpart.compose(&l_source)?;
            out.add_assign_unchecked(&left, &S::one());
            out.add_assign_unchecked(&right, &-sign::<S>(pf.koszul(*pd)));
        }
    }
    Ok(out)
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
    fn dz_after_z_is_leibniz() {
        let s = sp(1, 1);
        let z = D::multiplication(P::coordinate(s, 0).unwrap(), zero(), zero());
        let c = deriv(s, 0).compose(&z).unwrap();
        assert_eq!(c.to_string(), "z*Dz + 1");
    }

    #[test]
    fn apply_examples() {
        let s = sp(0, 2);
        let t1 = P::coordinate(s, 1).unwrap();
        let t2 = P::coordinate(s, 2).unwrap();
        let d = deriv(s, 1).compose(&deriv(s, 2)).unwrap();
        assert_eq!(d.to_string(), "Dth1*Dth2");
        let v = d.apply_poly(&(&t1 * &t2)).unwrap();
        assert_eq!(v, P::constant(s, Rational::from_i64(-1)));
        let rev = deriv(s, 2).compose(&deriv(s, 1)).unwrap();
        assert_eq!(rev, d.scale(&Rational::from_i64(-1)));
        assert!(deriv(s, 1).compose(&deriv(s, 1)).unwrap().is_zero());

        let s = sp(1, 0);
        let z = P::coordinate(s, 0).unwrap();
        let dens = Density::contact(&z * &z, zero());
        let out = deriv(s, 0).apply(&dens).unwrap();
        assert_eq!(out.value(), &z.scale(&Rational::from_i64(2)));
    }

    #[test]
    fn identity_changes_weight_only() {
        let s = sp(1, 1);
        let g = P::coordinate(s, 3).unwrap();
        let id = D::identity(s, Rational::from_i64(1), Rational::from_i64(3));
        let out = id.apply(&Density::contact(g.clone(), Rational::from_i64(1))).unwrap();
        assert_eq!(out.value(), &g);
        assert_eq!(out.weight(), &Rational::from_i64(3));
        assert!(id.apply(&Density::contact(g, zero())).is_err());
    }

    #[test]
    fn dbar_squared_is_minus_dz() {
        let s = sp(1, 1);
        let dbar = D::from_vector_field(&VectorField::tangent(s, 3).unwrap(), zero());
        let sq = dbar.compose(&dbar).unwrap();
        assert_eq!(sq, deriv(s, 0).scale(&Rational::from_i64(-1)));
    }

    #[test]
    fn weights_must_chain() {
        let s = sp(1, 0);
        let a = D::identity(s, Rational::from_i64(1), Rational::from_i64(2));
        let b = D::identity(s, Rational::from_i64(0), Rational::from_i64(1));
        assert!(a.compose(&b).is_ok());
        assert!(b.compose(&a).is_err());
    }

    #[test]
    fn lie_derivative_of_dz_by_one_vanishes() {
        let s = sp(1, 1);
        let l = lie_derivative(&P::one(s), &deriv(s, 0)).unwrap();
        assert!(l.is_zero());
    }
}
