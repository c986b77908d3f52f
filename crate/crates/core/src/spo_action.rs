//! The subalgebra `spo(2l+2|n)` of contact fields with generating functions
//! of weighted degree at most two, its explicit actions on the symbol
//! spaces, and the lift–act–project oracle those actions are checked
//! against.

use std::collections::BTreeSet;

use crate::diffops::{lie_derivative, Word};
use crate::error::{Error, Result};
use crate::geometry::{lagrange_bracket, tangent_apply};
use crate::scalar::{sign, Scalar};
use crate::superalgebra::{ContactSpace, CoordKind, Monomial, Parity, SuperPolynomial};
use crate::symbols::{symbol_of_normal_form, weyl_heisenberg_symbol, weyl_lift, Grade, SymbolKind, SymbolPoly};

/// Which notion of degree selects the candidate generating functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeConvention {
    /// `deg z = 2`, `deg q^r = 1`.
    Weighted,
    /// Every coordinate has degree 1.
    Total,
}

/// A monomial basis of `spo(2l+2|n)` whose closure under the Lagrange
/// bracket has been checked.
#[derive(Clone, Debug)]
pub struct SpoBasis<S> {
    space: ContactSpace,
    elements: Vec<SuperPolynomial<S>>,
    span: BTreeSet<Monomial>,
}

fn candidates(space: &ContactSpace, convention: DegreeConvention) -> Vec<Monomial> {
    Monomial::all_up_to_degree(space, 2)
        .into_iter()
        .filter(|m| match convention {
            DegreeConvention::Weighted => m.weighted_degree() <= 2,
            DegreeConvention::Total => true,
        })
        .collect()
}

/// Monomials of total degree at most two that are not of weighted degree at
/// most two, and vice versa.
pub fn degree_convention_discrepancy(space: &ContactSpace) -> (Vec<Monomial>, Vec<Monomial>) {
    let w: BTreeSet<Monomial> = candidates(space, DegreeConvention::Weighted).into_iter().collect();
    let t: BTreeSet<Monomial> = candidates(space, DegreeConvention::Total).into_iter().collect();
    (t.difference(&w).cloned().collect(), w.difference(&t).cloned().collect())
}

/// `(2l+2)(2l+3)/2 + n(n-1)/2 + (2l+2)n`.
pub fn expected_dimension(space: &ContactSpace) -> usize {
    let (m, n) = (2 * space.l() + 2, space.n());
    m * (m + 1) / 2 + n * n.saturating_sub(1) / 2 + m * n
}

impl<S: Scalar> SpoBasis<S> {
    /// `{1, q^r, q^r q^s, z, z q^r, z²}`, closure checked pairwise.
    pub fn new(space: ContactSpace) -> Result<Self> {
        Self::with_convention(space, DegreeConvention::Total)
    }

    pub fn with_convention(space: ContactSpace, convention: DegreeConvention) -> Result<Self> {
        let monos = candidates(&space, convention);
        let elements: Vec<SuperPolynomial<S>> = monos
            .iter()
            .map(|m| SuperPolynomial::monomial(space, m.clone(), S::one()))
            .collect();
        let basis = SpoBasis {
            space,
            span: monos.into_iter().collect(),
            elements,
        };
        basis.check_closure()?;
        Ok(basis)
    }

    fn check_closure(&self) -> Result<()> {
        for (i, f) in self.elements.iter().enumerate() {
            for g in &self.elements[i..] {
                let b = lagrange_bracket(f, g)?;
                if !self.contains(&b) {
                    return Err(Error::ClosureFailure {
                        left: f.to_string(),
                        right: g.to_string(),
                        bracket: b.to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn space(&self) -> ContactSpace {
        self.space
    }

    pub fn elements(&self) -> &[SuperPolynomial<S>] {
        &self.elements
    }

    pub fn dimension(&self) -> usize {
        self.elements.len()
    }

    /// Coefficient-wise membership in the span.
    pub fn contains(&self, f: &SuperPolynomial<S>) -> bool {
        f.monomials().all(|m| self.span.contains(m))
    }
}

/// Sign of the moment `ξ_r` relative to the stored moment of the same slot:
/// `ξ_{l+i}`, the moment of `T_{l+i} = -B_i`, is `-β_i`.
fn xi_sign(space: &ContactSpace, r: usize) -> bool {
    matches!(space.kind(r), CoordKind::Y(_))
}

/// `ξ_s ∂_{ξ_i}` on a moment monomial up to the multiplicity of `ξ_i`:
/// `(sign, word)` or `None`.
fn moment_shift(space: &ContactSpace, s: usize, i: usize, w: &Word) -> Option<(bool, Word)> {
    let l2 = 2 * space.l();
    let e = w.exponent(i);
    if e == 0 {
        return None;
    }
    let mut k = w.k().to_vec();
    k[i - 1] -= 1;
    let mut neg = xi_sign(space, s) != xi_sign(space, i);
    if space.is_odd(i) {
        neg ^= (k[l2..i - 1].iter().sum::<u32>()) % 2 == 1;
    }
    if space.is_odd(s) {
        if k[s - 1] > 0 {
            return None;
        }
        neg ^= (k[l2..s - 1].iter().sum::<u32>()) % 2 == 1;
    }
    k[s - 1] += 1;
    Some((neg, Word::new(w.c(), k)))
}

fn coefficient_signed<S: Scalar>(g: &SuperPolynomial<S>, odd: bool) -> SuperPolynomial<S> {
    if !odd {
        return g.clone();
    }
    let (e, o) = g.split_parity();
    e - o
}

/// Shared pieces of the explicit actions for homogeneous `f`.
struct Action<'a, S> {
    space: ContactSpace,
    f: &'a SuperPolynomial<S>,
    pf: Parity,
}

impl<S: Scalar> Action<'_, S> {
    /// `f ∂_z + ∂_z(f)(δ - E_ζ) - ½(-1)^{f̃ r̃} ω^{rs} T_r(f) T_s` on one term.
    fn coefficient_part(&self, w: &Word, g: &SuperPolynomial<S>, delta: &S, out: &mut SymbolPoly<S>) {
        let space = self.space;
        let f = self.f;
        let fp = f.dz();
        out.add_term(w.clone(), f * &g.dz());
        out.add_term(w.clone(), (&fp * g).scale(&(delta.clone() - S::from_i64(w.c() as i64))));
        for r in 1..=space.rank() {
            let tr = tangent_apply(r, f);
            if tr.is_zero() {
                continue;
            }
            let s = space.omega_partner(r);
            let c = -sign::<S>(self.pf.koszul(space.parity(r))) * S::from_i64(space.omega_upper(r, s)) * S::half();
            out.add_term(w.clone(), (&tr * &tangent_apply(s, g)).scale(&c));
        }
    }

    /// `½(-1)^{f̃(ĩ + r̃)} ω^{rs} T_i T_r(f) ξ_s ∂_{ξ_i}` on one term.
    fn moment_part(&self, w: &Word, g: &SuperPolynomial<S>, out: &mut SymbolPoly<S>) {
        let space = self.space;
        for i in 1..=space.rank() {
            if w.exponent(i) == 0 {
                continue;
            }
            for r in 1..=space.rank() {
                let tirf = tangent_apply(i, &tangent_apply(r, self.f));
                if tirf.is_zero() {
                    continue;
                }
                let s = space.omega_partner(r);
                let Some((neg, shifted)) = moment_shift(&space, s, i, w) else {
                    continue;
                };
                let mult = if space.is_odd(i) { 1 } else { w.exponent(i) as i64 };
                let prefactor = self.pf.koszul(space.parity(i).plus(space.parity(r)));
                let c = sign::<S>(prefactor ^ neg) * S::from_i64(space.omega_upper(r, s) * mult) * S::half();
                let odd_pass = space.parity(s).plus(space.parity(i)).is_odd();
                let gs = coefficient_signed(g, odd_pass);
                out.add_term(shifted, (&tirf * &gs).scale(&c));
            }
        }
    }

    /// `½(-1)^{f̃ r̃} ω^{rs} T_r(f') ξ_s ∂_ζ` on one term.
    fn zeta_part(&self, w: &Word, g: &SuperPolynomial<S>, out: &mut SymbolPoly<S>) {
        let space = self.space;
        if w.c() == 0 {
            return;
        }
        let fp = self.f.dz();
        for r in 1..=space.rank() {
            let trf = tangent_apply(r, &fp);
            if trf.is_zero() {
                continue;
            }
            let s = space.omega_partner(r);
            let mut k = w.k().to_vec();
            let mut neg = xi_sign(&space, s);
            if space.is_odd(s) {
                if k[s - 1] > 0 {
                    continue;
                }
                neg ^= (k[2 * space.l()..s - 1].iter().sum::<u32>()) % 2 == 1;
            }
            k[s - 1] += 1;
            let shifted = Word::new(w.c() - 1, k);
            let c = sign::<S>(self.pf.koszul(space.parity(r)) ^ neg)
                * S::from_i64(space.omega_upper(r, s) * w.c() as i64)
                * S::half();
            let gs = coefficient_signed(g, space.is_odd(s));
            out.add_term(shifted, (&trf * &gs).scale(&c));
        }
    }
}

fn check_spo<S: Scalar>(f: &SuperPolynomial<S>) -> Result<()> {
    if f.degree().unwrap_or(0) <= 2 {
        Ok(())
    } else {
        Err(Error::OutsideSpo(f.to_string()))
    }
}

fn run<S: Scalar>(f: &SuperPolynomial<S>, symbol: &SymbolPoly<S>, with_zeta: bool) -> Result<SymbolPoly<S>> {
    f.space().check_same(&symbol.space())?;
    check_spo(f)?;
    let space = f.space();
    let delta = symbol.weight().clone();
    let mut out = SymbolPoly::zero(space, delta.clone());
    for (pf, part) in f.homogeneous_parts() {
        let act = Action { space, f: &part, pf };
        for (w, g) in symbol.terms() {
            act.coefficient_part(w, g, &delta, &mut out);
            act.moment_part(w, g, &mut out);
            if with_zeta {
                act.zeta_part(w, g, &mut out);
            }
        }
    }
    Ok(out)
}

/// The explicit action of `X_f` on fine symbols.
pub fn act_sigma<S: Scalar>(f: &SuperPolynomial<S>, symbol: &SymbolPoly<S>) -> Result<SymbolPoly<S>> {
    run(f, symbol, false)
}

/// The explicit action on principal symbols: the fine action plus the
/// `ξ_s ∂_ζ` correction.
pub fn act_principal<S: Scalar>(f: &SuperPolynomial<S>, symbol: &SymbolPoly<S>) -> Result<SymbolPoly<S>> {
    run(f, symbol, true)
}

/// The action on Heisenberg symbols, computed componentwise by
/// [`act_sigma`] on each fine component.
pub fn act_heisenberg<S: Scalar>(f: &SuperPolynomial<S>, symbol: &SymbolPoly<S>) -> Result<SymbolPoly<S>> {
    let mut out = SymbolPoly::zero(symbol.space(), symbol.weight().clone());
    for k in symbol.canonical_degrees() {
        out = out.checked_add(&act_sigma(f, &symbol.fine_component(k))?)?;
    }
    Ok(out)
}

/// The grade of a homogeneous symbol for the given symbol map.
pub fn grade_of<S: Scalar>(symbol: &SymbolPoly<S>, kind: SymbolKind) -> Result<Grade> {
    let inhomogeneous = || Error::NotHomogeneous(kind.name());
    if symbol.is_zero() {
        return Err(inhomogeneous());
    }
    Ok(match kind {
        SymbolKind::Principal => Grade::Principal(symbol.canonical_degree().ok_or_else(inhomogeneous)?),
        SymbolKind::Heisenberg => Grade::Heisenberg(symbol.heisenberg_degree().ok_or_else(inhomogeneous)?),
        SymbolKind::Fine => {
            let (k, d) = symbol.bidegree().ok_or_else(inhomogeneous)?;
            Grade::Fine(k, d)
        }
    })
}

/// Lifts the symbol to its canonical operator between `λ` and `λ + δ`,
/// adds `lower` (which must lie in the lower filtration layer), takes the
/// Lie derivative along `X_f`, and projects back with the symbol map.
pub fn oracle_action_with<S: Scalar>(
    f: &SuperPolynomial<S>,
    symbol: &SymbolPoly<S>,
    kind: SymbolKind,
    source: S,
    lower: Option<&SymbolPoly<S>>,
) -> Result<SymbolPoly<S>> {
    f.space().check_same(&symbol.space())?;
    let grade = grade_of(symbol, kind)?;
    let mut lift = symbol.lift(source.clone()).expand();
    if let Some(extra) = lower {
        let extra = extra.clone().with_weight(symbol.weight().clone());
        let extra_op = extra.lift(source).expand();
        lift = lift.checked_add(&extra_op)?;
    }
    let moved = lie_derivative(f, &lift)?;
    let projected = symbol_of_normal_form(&moved.normal_form(), grade)?;
    Ok(projected.filter(|w| grade.contains(w)))
}

/// [`oracle_action_with`] with `λ = 0` and no lower-order perturbation.
pub fn oracle_action<S: Scalar>(
    f: &SuperPolynomial<S>,
    symbol: &SymbolPoly<S>,
    kind: SymbolKind,
) -> Result<SymbolPoly<S>> {
    oracle_action_with(f, symbol, kind, S::zero(), None)
}

/// [`oracle_action`] for a Heisenberg-homogeneous symbol, with the symbol
/// space identified with operators through the Weyl-ordered lift instead
/// of the canonical word order.
pub fn weyl_oracle_action<S: Scalar>(f: &SuperPolynomial<S>, symbol: &SymbolPoly<S>) -> Result<SymbolPoly<S>> {
    f.space().check_same(&symbol.space())?;
    let h = symbol
        .heisenberg_degree()
        .filter(|_| !symbol.is_zero())
        .ok_or(Error::NotHomogeneous("heisenberg"))?;
    let moved = lie_derivative(f, &weyl_lift(symbol, S::zero()))?;
    weyl_heisenberg_symbol(&moved, h)
}

/// The explicit formula matching `kind`.
pub fn act<S: Scalar>(f: &SuperPolynomial<S>, symbol: &SymbolPoly<S>, kind: SymbolKind) -> Result<SymbolPoly<S>> {
    match kind {
        SymbolKind::Fine => act_sigma(f, symbol),
        SymbolKind::Principal => act_principal(f, symbol),
        SymbolKind::Heisenberg => act_heisenberg(f, symbol),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffops::HalfInt;
    use crate::Rational;

    type P = SuperPolynomial<Rational>;
    type Sym = SymbolPoly<Rational>;

    fn sp(l: usize, n: usize) -> ContactSpace {
        ContactSpace::new(l, n).unwrap()
    }

    fn r(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn q(s: ContactSpace, a: usize) -> P {
        P::coordinate(s, a).unwrap()
    }

    #[test]
    fn basis_dimensions_match() {
        for (l, n) in [(0, 1), (1, 0), (1, 1), (1, 2), (2, 1)] {
            let s = sp(l, n);
            let b = SpoBasis::<Rational>::new(s).unwrap();
            assert_eq!(b.dimension(), expected_dimension(&s), "{s}");
            assert!(b.contains(&P::one(s)));
        }
    }

    #[test]
    fn weighted_reading_drops_z_times_coordinates() {
        let s = sp(1, 0);
        let (missing, extra) = degree_convention_discrepancy(&s);
        let names: Vec<String> = missing.iter().map(|m| m.display(&s)).collect();
        assert_eq!(names, ["z*y1", "z*x1", "z^2"]);
        assert!(extra.is_empty());
        let w = SpoBasis::<Rational>::with_convention(s, DegreeConvention::Weighted).unwrap();
        assert_eq!(w.dimension(), 7);
    }

    #[test]
    fn euler_term_on_zeta() {
        let s = sp(1, 0);
        let zeta = Sym::moment(s, Word::dz_power(&s, 1), r(0));
        assert_eq!(act_sigma(&q(s, 0), &zeta).unwrap().to_string(), "-zeta");
        let zeta3 = Sym::moment(s, Word::dz_power(&s, 1), r(3));
        assert_eq!(act_sigma(&q(s, 0), &zeta3).unwrap().to_string(), "2*zeta");
    }

    #[test]
    fn constant_function_acts_by_dz() {
        let s = sp(1, 1);
        let g = &(&q(s, 0) * &q(s, 1)) + &q(s, 3);
        let sym = Sym::function(g.clone(), r(2))
            .checked_mul(&Sym::moment(s, Word::generator(&s, 3), r(0)))
            .unwrap();
        let out = act_sigma(&P::one(s), &sym).unwrap();
        assert_eq!(out, sym.map_coefficients(|h| h.dz()));
    }

    #[test]
    fn principal_correction_for_z_squared() {
        let s = sp(1, 0);
        let z2 = &q(s, 0) * &q(s, 0);
        let zeta = Sym::moment(s, Word::dz_power(&s, 1), r(0));
        let fine = act_sigma(&z2, &zeta).unwrap();
        let principal = act_principal(&z2, &zeta).unwrap();
        let correction = principal.checked_sub(&fine).unwrap();
        // ½ω^{12}T_1(2z)ξ_2 + ½ω^{21}T_2(2z)ξ_1 with T_1(z) = y_1, T_2(z) = -x_1, ξ_2 = -β_1
        assert_eq!(correction.to_string(), "-x1*a1 + y1*b1");
        assert_eq!(principal, oracle_action(&z2, &zeta, SymbolKind::Principal).unwrap());
    }

    #[test]
    fn outside_spo_is_rejected() {
        let s = sp(1, 0);
        let f = &(&q(s, 1) * &q(s, 1)) * &q(s, 1);
        let zeta = Sym::moment(s, Word::dz_power(&s, 1), r(0));
        assert!(matches!(act_sigma(&f, &zeta), Err(Error::OutsideSpo(_))));
    }

    #[test]
    fn formulas_match_oracle_on_small_grid() {
        for (l, n) in [(1, 0), (0, 2), (1, 1)] {
            let s = sp(l, n);
            let basis = SpoBasis::<Rational>::new(s).unwrap();
            for w in crate::symbols::moment_words(&s, 2) {
                let sym = Sym::moment(s, w, Rational::new(-1, 2));
                for f in basis.elements() {
                    for kind in [SymbolKind::Fine, SymbolKind::Principal] {
                        assert_eq!(
                            act(f, &sym, kind).unwrap(),
                            oracle_action(f, &sym, kind).unwrap(),
                            "{kind} f={f} S={sym}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn heisenberg_layer_mixes_canonical_degrees() {
        let s = sp(1, 0);
        let f = &q(s, 2) * &q(s, 2);
        let b2 = Sym::moment(s, Word::new(0, vec![0, 2]), r(0));
        let oracle = oracle_action(&f, &b2, SymbolKind::Heisenberg).unwrap();
        let formula = act_heisenberg(&f, &b2).unwrap();
        assert_eq!(formula.to_string(), "-2*a1*b1");
        assert_eq!(oracle.to_string(), "-2*a1*b1 + 2*zeta");
        assert_eq!(oracle.heisenberg_degree(), Some(HalfInt::from_int(1)));
        assert_eq!(weyl_oracle_action(&f, &b2).unwrap(), formula);
    }
}
