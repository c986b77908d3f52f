//! Moment-polynomial symbol spaces and the principal, Heisenberg and fine
//! symbol maps.
//!
//! A symbol `Σ g_{cK} α^δ ζ^c α^I β^J γ^T` is stored as a map from [`Word`]
//! (read as a moment monomial) to its coefficient superfunction, plus the
//! weight `δ`. The moments `ζ, α_i, β_i` are even and the `γ_j` odd; the
//! coefficient always stands left of the moments.

use std::collections::BTreeMap;
use std::fmt;

use crate::diffops::{render_term, DiffOperator, HalfInt, NormalForm, Word};
use crate::error::{Error, Result};
use crate::geometry::VectorField;
use crate::scalar::{sign, Scalar};
use crate::superalgebra::{merge_sign, ContactSpace, Monomial, ParityClass, SuperPolynomial};

/// Which filtration a symbol map reads off.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymbolKind {
    /// `σ_k`: terms with `c + |K| = k`.
    Principal,
    /// `hσ_d`: terms with `c + |K|/2 = d`.
    Heisenberg,
    /// `fσ_{k,d}`: both.
    Fine,
}

impl SymbolKind {
    pub fn name(self) -> &'static str {
        match self {
            SymbolKind::Principal => "principal",
            SymbolKind::Heisenberg => "heisenberg",
            SymbolKind::Fine => "fine",
        }
    }
}

impl fmt::Display for SymbolKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for SymbolKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "principal" => Ok(SymbolKind::Principal),
            "heisenberg" => Ok(SymbolKind::Heisenberg),
            "fine" => Ok(SymbolKind::Fine),
            other => Err(format!("unknown symbol kind `{other}`")),
        }
    }
}

/// The degree a symbol map projects onto.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Grade {
    Principal(u32),
    Heisenberg(HalfInt),
    Fine(u32, HalfInt),
}

impl Grade {
    pub fn kind(self) -> SymbolKind {
        match self {
            Grade::Principal(_) => SymbolKind::Principal,
            Grade::Heisenberg(_) => SymbolKind::Heisenberg,
            Grade::Fine(..) => SymbolKind::Fine,
        }
    }

    pub fn contains(self, w: &Word) -> bool {
        match self {
            Grade::Principal(k) => w.canonical_degree() == k,
            Grade::Heisenberg(d) => w.heisenberg_degree() == d,
            Grade::Fine(k, d) => w.canonical_degree() == k && w.heisenberg_degree() == d,
        }
    }

    /// Whether an operator of bi-order `(k, d)` lies in the filtration layer.
    fn admits(self, k: u32, d: HalfInt) -> bool {
        match self {
            Grade::Principal(kk) => k <= kk,
            Grade::Heisenberg(dd) => d <= dd,
            Grade::Fine(kk, dd) => k <= kk && d <= dd,
        }
    }

    fn describe(self) -> String {
        match self {
            Grade::Principal(k) => format!("k={k}"),
            Grade::Heisenberg(d) => format!("d={d}"),
            Grade::Fine(k, d) => format!("k={k}, d={d}"),
        }
    }
}

/// An element of `F_δ ⊗ Pol(T*ℝ^(2l+1|n))`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolPoly<S> {
    space: ContactSpace,
    weight: S,
    terms: BTreeMap<Word, SuperPolynomial<S>>,
}

impl<S: Scalar> SymbolPoly<S> {
    pub fn zero(space: ContactSpace, weight: S) -> Self {
        SymbolPoly {
            space,
            weight,
            terms: BTreeMap::new(),
        }
    }

    /// `α^δ` times the moment monomial `w`.
    pub fn moment(space: ContactSpace, w: Word, weight: S) -> Self {
        let mut out = Self::zero(space, weight);
        out.add_term(w, SuperPolynomial::one(space));
        out
    }

    /// `g α^δ`, no moments.
    pub fn function(g: SuperPolynomial<S>, weight: S) -> Self {
        let space = g.space();
        let mut out = Self::zero(space, weight);
        out.add_term(Word::one(&space), g);
        out
    }

    pub fn from_terms(
        space: ContactSpace,
        weight: S,
        terms: impl IntoIterator<Item = (Word, SuperPolynomial<S>)>,
    ) -> Result<Self> {
        let nf = NormalForm::from_terms(space, S::zero(), weight.clone(), terms)?;
        Ok(Self::from_normal_form_terms(&nf, weight, |_| true))
    }

    fn from_normal_form_terms(nf: &NormalForm<S>, weight: S, keep: impl Fn(&Word) -> bool) -> Self {
        let mut out = Self::zero(nf.space(), weight);
        for (w, h) in nf.terms() {
            if keep(w) {
                out.terms.insert(w.clone(), h.clone());
            }
        }
        out
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

    pub fn space(&self) -> ContactSpace {
        self.space
    }

    pub fn weight(&self) -> &S {
        &self.weight
    }

    pub fn with_weight(mut self, weight: S) -> Self {
        self.weight = weight;
        self
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

    fn degrees<T: Ord>(&self, f: impl Fn(&Word) -> T) -> Option<T> {
        let mut it = self.terms.keys().map(f);
        let first = it.next()?;
        it.all(|x| x == first).then_some(first)
    }

    /// `Some(k)` when every term has canonical degree `k`.
    pub fn canonical_degree(&self) -> Option<u32> {
        self.degrees(Word::canonical_degree)
    }

    /// `Some(d)` when every term has Heisenberg degree `d`.
    pub fn heisenberg_degree(&self) -> Option<HalfInt> {
        self.degrees(Word::heisenberg_degree)
    }

    /// `Some((k, d))` when the symbol is fine-homogeneous.
    pub fn bidegree(&self) -> Option<(u32, HalfInt)> {
        self.degrees(|w| (w.canonical_degree(), w.heisenberg_degree()))
    }

    pub fn filter(&self, keep: impl Fn(&Word) -> bool) -> Self {
        SymbolPoly {
            space: self.space,
            weight: self.weight.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| keep(w))
                .map(|(w, h)| (w.clone(), h.clone()))
                .collect(),
        }
    }

    /// The part of canonical degree `k`.
    pub fn fine_component(&self, k: u32) -> Self {
        self.filter(|w| w.canonical_degree() == k)
    }

    /// Canonical degrees present, ascending.
    pub fn canonical_degrees(&self) -> Vec<u32> {
        let mut ks: Vec<u32> = self.terms.keys().map(Word::canonical_degree).collect();
        ks.sort_unstable();
        ks.dedup();
        ks
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.space.check_same(&other.space)?;
        if self.weight != other.weight {
            return Err(Error::WeightMismatch {
                expected: self.weight.to_string(),
                found: other.weight.to_string(),
            });
        }
        let mut out = self.clone();
        for (w, h) in &other.terms {
            out.add_term(w.clone(), h.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.space, self.weight.clone());
        for (w, h) in &self.terms {
            out.add_term(w.clone(), h.scale(c));
        }
        out
    }

    /// The product `(g m)(g' m') = (-1)^{|m||g'|} g g' (m m')`; weights add.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.space.check_same(&other.space)?;
        let space = self.space;
        let l2 = 2 * space.l();
        let mut out = Self::zero(space, self.weight.clone() + other.weight.clone());
        for (w1, g1) in &self.terms {
            let (m1_mask, m1_odd) = (w1.odd_mask(&space), w1.parity(&space));
            for (w2, g2) in &other.terms {
                let m2_mask = w2.odd_mask(&space);
                if m1_mask & m2_mask != 0 {
                    continue;
                }
                let mut k: Vec<u32> = w1.k().iter().zip(w2.k()).map(|(a, b)| a + b).collect();
                for e in &mut k[l2..] {
                    *e = (*e).min(1);
                }
                let w = Word::new(w1.c() + w2.c(), k);
                let (g2e, g2o) = g2.split_parity();
                let g2s = if m1_odd.is_odd() { g2e - g2o } else { g2e + g2o };
                let s = sign::<S>(merge_sign(m1_mask, m2_mask));
                out.add_term(w, (g1 * &g2s).scale(&s));
            }
        }
        Ok(out)
    }

    /// The canonical operator representative `Σ g ∂_z^c A^I B^J D̄^T`, acting
    /// between weights `λ` and `λ + δ`.
    pub fn lift(&self, source: S) -> NormalForm<S> {
        let target = source.clone() + self.weight.clone();
        NormalForm::from_terms(self.space, source, target, self.terms.clone()).expect("valid words")
    }

    /// Applies a map to every coefficient superfunction.
    pub fn map_coefficients(&self, f: impl Fn(&SuperPolynomial<S>) -> SuperPolynomial<S>) -> Self {
        let mut out = Self::zero(self.space, self.weight.clone());
        for (w, h) in &self.terms {
            out.add_term(w.clone(), f(h));
        }
        out
    }

    /// `(coefficient, coefficient monomial, moment word)` in printing order.
    pub fn flat_terms(&self) -> Vec<(S, Monomial, Word)> {
        self.terms
            .iter()
            .rev()
            .flat_map(|(w, h)| h.terms().rev().map(move |(m, c)| (c.clone(), m.clone(), w.clone())))
            .collect()
    }
}

impl<S: Scalar> fmt::Display for SymbolPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let space = self.space;
        let mut out = String::new();
        let terms = self
            .flat_terms()
            .into_iter()
            .map(|(c, m, w)| (c, render_term(&space, &m, &w.moment_name(&space))));
        crate::text::write_sum(&mut out, terms);
        f.write_str(&out)
    }
}

/// Projects a normal form onto the given grade. The operator must lie in the
/// matching filtration layer.
pub fn symbol_of_normal_form<S: Scalar>(nf: &NormalForm<S>, grade: Grade) -> Result<SymbolPoly<S>> {
    let weight = nf.target().clone() - nf.source().clone();
    if let Some(w) = nf
        .terms()
        .map(|(w, _)| w)
        .find(|w| !grade.admits(w.canonical_degree(), w.heisenberg_degree()))
    {
        let (k, d) = (w.canonical_degree(), w.heisenberg_degree());
        let found = match grade {
            Grade::Principal(_) => format!("k={}", nf.order().unwrap_or(k)),
            Grade::Heisenberg(_) => format!("d={}", nf.heisenberg_order().unwrap_or(d)),
            Grade::Fine(..) => format!("k={k}, d={d}"),
        };
        return Err(Error::OrderExceeded {
            filtration: grade.kind().name(),
            found,
            requested: grade.describe(),
        });
    }
    Ok(SymbolPoly::from_normal_form_terms(nf, weight, |w| grade.contains(w)))
}

/// `σ_k(D)`.
pub fn principal_symbol<S: Scalar>(d: &DiffOperator<S>, k: u32) -> Result<SymbolPoly<S>> {
    symbol_of_normal_form(&d.normal_form(), Grade::Principal(k))
}

/// `hσ_d(D)`.
pub fn heisenberg_symbol<S: Scalar>(d: &DiffOperator<S>, h: HalfInt) -> Result<SymbolPoly<S>> {
    symbol_of_normal_form(&d.normal_form(), Grade::Heisenberg(h))
}

/// `fσ_{k,d}(D)`.
pub fn fine_symbol<S: Scalar>(d: &DiffOperator<S>, k: u32, h: HalfInt) -> Result<SymbolPoly<S>> {
    symbol_of_normal_form(&d.normal_form(), Grade::Fine(k, h))
}

/// `A_i`, `B_i` or `D̄_j` for the word index `r`, as an operator `λ → λ`.
fn generator_operator<S: Scalar>(space: ContactSpace, r: usize, weight: &S) -> DiffOperator<S> {
    let t = DiffOperator::from_vector_field(&VectorField::tangent(space, r).expect("index in range"), weight.clone());
    if r > space.l() && r <= 2 * space.l() {
        t.scale(&-S::one())
    } else {
        t
    }
}

/// Graded-symmetric product of the letters in `k`: the average over all
/// orderings, with a sign for every exchange of two odd letters.
fn symmetrized<S: Scalar>(
    space: ContactSpace,
    k: &[u32],
    weight: &S,
    memo: &mut BTreeMap<Vec<u32>, DiffOperator<S>>,
) -> DiffOperator<S> {
    if let Some(d) = memo.get(k) {
        return d.clone();
    }
    let n: u32 = k.iter().sum();
    let mut out = DiffOperator::zero(space, weight.clone(), weight.clone());
    if n == 0 {
        out = DiffOperator::identity(space, weight.clone(), weight.clone());
    }
    let mut odd_before = 0;
    for (i, &e) in k.iter().enumerate() {
        let odd = space.is_odd(i + 1);
        if e > 0 {
            let mut rest = k.to_vec();
            rest[i] -= 1;
            let tail = symmetrized(space, &rest, weight, memo);
            let head = generator_operator(space, i + 1, weight);
            let c = sign::<S>(odd && odd_before % 2 == 1) * S::from_i64(e as i64) / S::from_i64(n as i64);
            out.add_assign_unchecked(&head.compose(&tail).expect("equal weights"), &c);
        }
        if odd {
            odd_before += e;
        }
    }
    memo.insert(k.to_vec(), out.clone());
    out
}

/// The Weyl-ordered representative `Σ g ∂_z^c Sym(A^I B^J D̄^T)` between
/// weights `λ` and `λ + δ`.
pub fn weyl_lift<S: Scalar>(symbol: &SymbolPoly<S>, source: S) -> DiffOperator<S> {
    let space = symbol.space;
    let mut memo = BTreeMap::new();
    let dz = DiffOperator::derivative(space, 0, source.clone()).expect("z exists");
    let mut out = DiffOperator::zero(space, source.clone(), source.clone());
    for (w, g) in &symbol.terms {
        let mut d = symmetrized(space, w.k(), &source, &mut memo);
        for _ in 0..w.c() {
            d = d.compose(&dz).expect("equal weights");
        }
        out.add_assign_unchecked(&d.left_mul(g), &S::one());
    }
    let target = source.clone() + symbol.weight.clone();
    out.with_weights(source, target)
}

/// `hσ_d(D)` read in the Weyl-ordered basis: the symbol whose
/// [`weyl_lift`] agrees with `D` modulo the layer below `d`.
pub fn weyl_heisenberg_symbol<S: Scalar>(d: &DiffOperator<S>, h: HalfInt) -> Result<SymbolPoly<S>> {
    let grade = Grade::Heisenberg(h);
    let mut residual = symbol_of_normal_form(&d.normal_form(), grade)?;
    let mut out = SymbolPoly::zero(d.space(), residual.weight.clone());
    while let Some(&k) = residual.canonical_degrees().last() {
        let top = residual.fine_component(k);
        let lifted = weyl_lift(&top, d.source().clone());
        residual = residual.checked_sub(&symbol_of_normal_form(&lifted.normal_form(), grade)?)?;
        out = out.checked_add(&top)?;
    }
    Ok(out)
}

/// All `K` with `|K| = len` (odd entries at most 1), in increasing order.
pub fn words_of_length(space: &ContactSpace, len: u32) -> Vec<Vec<u32>> {
    fn rec(space: &ContactSpace, pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos == space.rank() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let max = if space.is_odd(pos + 1) { left.min(1) } else { left };
        for e in 0..=max {
            cur.push(e);
            rec(space, pos + 1, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(space, 0, len, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Moment monomials with `c + |K| = k` and `c + |K|/2 = d`.
pub fn fine_words(space: &ContactSpace, k: u32, d: HalfInt) -> Vec<Word> {
    // c = 2d - k, |K| = 2k - 2d
    let twice_d = d.twice();
    if 2 * k < twice_d || twice_d < k {
        return Vec::new();
    }
    let c = twice_d - k;
    let klen = 2 * k - twice_d;
    words_of_length(space, klen)
        .into_iter()
        .map(|kk| Word::new(c, kk))
        .collect()
}

/// Moment monomials of Heisenberg degree `d`, enumerated directly over `c`.
pub fn heisenberg_words(space: &ContactSpace, d: HalfInt) -> Vec<Word> {
    let mut out = Vec::new();
    for c in 0..=d.twice() / 2 {
        let klen = d.twice() - 2 * c;
        out.extend(words_of_length(space, klen).into_iter().map(|kk| Word::new(c, kk)));
    }
    out.sort();
    out
}

/// Moment monomials with `c + |K| <= max_k`.
pub fn moment_words(space: &ContactSpace, max_k: u32) -> Vec<Word> {
    let mut out = Vec::new();
    for total in 0..=max_k {
        for klen in 0..=total {
            out.extend(
                words_of_length(space, klen)
                    .into_iter()
                    .map(|kk| Word::new(total - klen, kk)),
            );
        }
    }
    out.sort();
    out
}

/// One summand `Σ^{k,d}` of the Heisenberg symbol space, spanned over the
/// coefficient monomials of degree at most the requested bound.
#[derive(Clone, Debug, PartialEq)]
pub struct FineComponent {
    pub k: u32,
    pub basis: Vec<(Monomial, Word)>,
}

/// `P^d = ⊕_{k=⌈d⌉}^{2d} Σ^{k,d}` as explicit bases.
pub fn fine_decomposition(space: &ContactSpace, d: HalfInt, max_coeff_degree: u32) -> Vec<FineComponent> {
    let coeffs = Monomial::all_up_to_degree(space, max_coeff_degree);
    (d.ceil()..=d.twice())
        .map(|k| FineComponent {
            k,
            basis: fine_words(space, k, d)
                .into_iter()
                .flat_map(|w| coeffs.iter().map(move |m| (m.clone(), w.clone())))
                .collect(),
        })
        .collect()
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

    fn r(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn nf(s: ContactSpace, terms: Vec<(Word, P)>) -> NormalForm<Rational> {
        NormalForm::from_terms(s, r(0), r(0), terms).unwrap()
    }

    #[test]
    fn principal_of_dx() {
        let s = sp(1, 1);
        let d = D::derivative(s, 1, r(0)).unwrap();
        assert_eq!(principal_symbol(&d, 1).unwrap().to_string(), "a1 - y1*zeta");
        assert!(principal_symbol(&d, 0).is_err());
        let g = D::multiplication(P::coordinate(s, 1).unwrap(), r(0), r(2));
        let sym = principal_symbol(&g, 0).unwrap();
        assert_eq!(sym.to_string(), "x1");
        assert_eq!(*sym.weight(), r(2));
    }

    #[test]
    fn heisenberg_and_fine_filtering() {
        let s = sp(1, 1);
        let one = P::one(s);
        let ab_dz = nf(
            s,
            vec![
                (Word::new(0, vec![1, 1, 0]), one.clone()),
                (Word::dz_power(&s, 1), one.clone()),
            ],
        );
        let h = symbol_of_normal_form(&ab_dz, Grade::Heisenberg(HalfInt::from_int(1))).unwrap();
        assert_eq!(h.to_string(), "a1*b1 + zeta");
        let f21 = symbol_of_normal_form(&ab_dz, Grade::Fine(2, HalfInt::from_int(1))).unwrap();
        assert_eq!(f21.to_string(), "a1*b1");
        let f11 = symbol_of_normal_form(&ab_dz, Grade::Fine(1, HalfInt::from_int(1)));
        assert!(f11.is_err(), "A1B1 has k=2 so it is outside D^(1,1)");

        let dz_a = nf(
            s,
            vec![(Word::generator(&s, 1), one.clone()), (Word::dz_power(&s, 1), one)],
        );
        let h1 = symbol_of_normal_form(&dz_a, Grade::Heisenberg(HalfInt::from_int(1))).unwrap();
        assert_eq!(h1.to_string(), "zeta");
    }

    #[test]
    fn fine_decomposition_at_d1() {
        let s = sp(1, 1);
        let parts = fine_decomposition(&s, HalfInt::from_int(1), 0);
        let names: Vec<(u32, Vec<String>)> = parts
            .iter()
            .map(|p| (p.k, p.basis.iter().map(|(_, w)| w.moment_name(&s)).collect()))
            .collect();
        assert_eq!(names[0], (1, vec!["zeta".to_string()]));
        assert_eq!(names[1].0, 2);
        let mut k2 = names[1].1.clone();
        k2.sort();
        assert_eq!(k2, vec!["a1*b1", "a1*g1", "a1^2", "b1*g1", "b1^2"]);
        let half = fine_decomposition(&s, HalfInt::HALF, 0);
        assert_eq!(half.len(), 1);
        assert_eq!(half[0].basis.len(), 3);
        let zero = fine_decomposition(&s, HalfInt::ZERO, 0);
        assert_eq!(zero.len(), 1);
        assert_eq!(zero[0].basis[0].1, Word::one(&s));
    }

    #[test]
    fn odd_moments_anticommute() {
        let s = sp(0, 2);
        let g1 = SymbolPoly::moment(s, Word::generator(&s, 1), r(0));
        let g2 = SymbolPoly::moment(s, Word::generator(&s, 2), r(0));
        let a = g1.checked_mul(&g2).unwrap();
        let b = g2.checked_mul(&g1).unwrap();
        assert_eq!(a.to_string(), "g1*g2");
        assert_eq!(b.to_string(), "-g1*g2");
        assert!(g1.checked_mul(&g1).unwrap().is_zero());
        // γ_1 · θ_1 = -θ_1 γ_1
        let th = SymbolPoly::function(P::coordinate(s, 1).unwrap(), r(0));
        assert_eq!(g1.checked_mul(&th).unwrap().to_string(), "-th1*g1");
    }

    #[test]
    fn weyl_lift_symmetrizes() {
        let s = sp(1, 2);
        let lift = |k: Vec<u32>| {
            let sym = SymbolPoly::moment(s, Word::new(0, k), r(0));
            weyl_lift(&sym, r(0)).normal_form().to_string()
        };
        assert_eq!(lift(vec![1, 1, 0, 0]), "A1*B1 - Dz");
        assert_eq!(lift(vec![0, 0, 1, 1]), "Dbar1*Dbar2");
        assert_eq!(lift(vec![0, 2, 0, 0]), "B1^2");
        assert_eq!(lift(vec![1, 1, 1, 0]), "A1*B1*Dbar1 - Dz*Dbar1");
    }

    #[test]
    fn weyl_symbol_inverts_weyl_lift() {
        let s = sp(1, 1);
        let h = HalfInt::from_int(2);
        for (i, w) in fine_words(&s, 3, h).into_iter().enumerate() {
            let g = if i % 2 == 0 {
                P::one(s)
            } else {
                P::coordinate(s, 1).unwrap()
            };
            let sym = SymbolPoly::from_terms(s, r(1), [(w, g)]).unwrap();
            let back = weyl_heisenberg_symbol(&weyl_lift(&sym, r(0)), h).unwrap();
            assert_eq!(back, sym);
        }
    }
}
