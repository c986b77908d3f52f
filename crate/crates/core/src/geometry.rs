//! Super vector fields, the contact form `α = dz + ω_{rs} q^r dq^s`, the
//! distribution fields `T_r`, contact fields `X_f` and the Lagrange bracket.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{sign, Scalar};
use crate::superalgebra::{ContactSpace, Monomial, Parity, ParityClass, SuperPolynomial};

/// `X = Σ_A X^A ∂_{q^A}` with coefficients standing to the left.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField<S> {
    space: ContactSpace,
    coeffs: Vec<SuperPolynomial<S>>,
}

impl<S: Scalar> VectorField<S> {
    pub fn zero(space: ContactSpace) -> Self {
        VectorField {
            space,
            coeffs: vec![SuperPolynomial::zero(space); space.num_coords()],
        }
    }

    /// The coordinate field `∂_{q^A}`.
    pub fn coordinate(space: ContactSpace, a: usize) -> Result<Self> {
        space.check_index(a)?;
        let mut x = Self::zero(space);
        x.coeffs[a] = SuperPolynomial::one(space);
        Ok(x)
    }

    /// The Reeb field `T_0 = ∂_z`.
    pub fn reeb(space: ContactSpace) -> Self {
        Self::coordinate(space, 0).expect("z is always a coordinate")
    }

    /// `T_r = ∂_{q^r} - ω_{kr} q^k ∂_z` for `1 <= r <= 2l+n`.
    pub fn tangent(space: ContactSpace, r: usize) -> Result<Self> {
        if r == 0 || r > space.rank() {
            return Err(Error::IndexOutOfRange { index: r, space });
        }
        let mut x = Self::zero(space);
        x.coeffs[r] = SuperPolynomial::one(space);
        let k = space.omega_partner(r);
        let w = space.omega_lower(k, r);
        x.coeffs[0] = SuperPolynomial::monomial(space, Monomial::coordinate(&space, k), S::from_i64(-w));
        Ok(x)
    }

    pub fn from_components(space: ContactSpace, coeffs: Vec<SuperPolynomial<S>>) -> Result<Self> {
        if coeffs.len() != space.num_coords() {
            return Err(Error::IndexOutOfRange {
                index: coeffs.len(),
                space,
            });
        }
        for c in &coeffs {
            space.check_same(&c.space())?;
        }
        Ok(VectorField { space, coeffs })
    }

    pub fn space(&self) -> ContactSpace {
        self.space
    }

    pub fn component(&self, a: usize) -> &SuperPolynomial<S> {
        &self.coeffs[a]
    }

    pub fn components(&self) -> &[SuperPolynomial<S>] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(SuperPolynomial::is_zero)
    }

    /// `X(g) = Σ_A X^A ∂_{q^A} g`.
    pub fn apply(&self, g: &SuperPolynomial<S>) -> Result<SuperPolynomial<S>> {
        self.space.check_same(&g.space())?;
        let mut out = SuperPolynomial::zero(self.space);
        for (a, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = g.partial(a)?;
            if !d.is_zero() {
                out.add_assign_ref(&(c * &d));
            }
        }
        Ok(out)
    }

    /// Parity of the term `X^A ∂_A` is `|X^A| + Ã`.
    pub fn parity(&self) -> ParityClass {
        let mut acc = ParityClass::Zero;
        for (a, c) in self.coeffs.iter().enumerate() {
            for m in c.monomials() {
                acc = acc.with(m.parity().plus(self.space.parity(a)));
            }
        }
        acc
    }

    pub fn split_parity(&self) -> (Self, Self) {
        let mut even = Self::zero(self.space);
        let mut odd = Self::zero(self.space);
        for (a, c) in self.coeffs.iter().enumerate() {
            let (ce, co) = c.split_parity();
            if self.space.is_odd(a) {
                even.coeffs[a] = co;
                odd.coeffs[a] = ce;
            } else {
                even.coeffs[a] = ce;
                odd.coeffs[a] = co;
            }
        }
        (even, odd)
    }

    pub fn homogeneous_parts(&self) -> Vec<(Parity, Self)> {
        let (even, odd) = self.split_parity();
        [(Parity::Even, even), (Parity::Odd, odd)]
            .into_iter()
            .filter(|(_, x)| !x.is_zero())
            .collect()
    }

    /// Super bracket `[X, Y] = X∘Y - (-1)^{|X||Y|} Y∘X`, split into
    /// homogeneous parts when needed.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.space.check_same(&other.space)?;
        let mut out = Self::zero(self.space);
        for (px, x) in self.homogeneous_parts() {
            for (py, y) in other.homogeneous_parts() {
                let s = sign::<S>(px.koszul(py));
                for b in 0..self.space.num_coords() {
                    let xy = x.apply(&y.coeffs[b])?;
                    let yx = y.apply(&x.coeffs[b])?;
                    out.coeffs[b].add_assign_ref(&xy);
                    out.coeffs[b].add_scaled(&yx, &-s.clone());
                }
            }
        }
        Ok(out)
    }

    /// `div X = Σ_A (-1)^{|X^A| Ã} ∂_{q^A} X^A`, taken term by term.
    pub fn divergence(&self) -> SuperPolynomial<S> {
        let mut out = SuperPolynomial::zero(self.space);
        for (a, c) in self.coeffs.iter().enumerate() {
            let odd_coord = self.space.is_odd(a);
            for (m, v) in c.terms() {
                let neg = odd_coord && m.parity().is_odd();
                let term = SuperPolynomial::monomial(self.space, m.clone(), v.clone());
                out.add_scaled(&term.partial(a).expect("index in range"), &sign::<S>(neg));
            }
        }
        out
    }

    /// `h·X`.
    pub fn left_mul(&self, h: &SuperPolynomial<S>) -> Result<Self> {
        self.space.check_same(&h.space())?;
        Ok(VectorField {
            space: self.space,
            coeffs: self.coeffs.iter().map(|c| h * c).collect(),
        })
    }

    pub fn scale(&self, c: &S) -> Self {
        VectorField {
            space: self.space,
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            a.add_assign_ref(b);
        }
    }
}

impl<S: Scalar> fmt::Display for VectorField<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        let space = self.space;
        let terms = self.coeffs.iter().enumerate().flat_map(|(a, c)| {
            let d = format!("D{}", space.coordinate_name(a));
            c.terms().rev().map(move |(m, v)| {
                let body = if m.is_one() {
                    d.clone()
                } else {
                    format!("{}*{}", m.display(&space), d)
                };
                (v.clone(), body)
            })
        });
        crate::text::write_sum(&mut out, terms);
        f.write_str(&out)
    }
}

impl<S: Scalar> Add for &VectorField<S> {
    type Output = VectorField<S>;

    fn add(self, rhs: Self) -> VectorField<S> {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl<S: Scalar> Sub for &VectorField<S> {
    type Output = VectorField<S>;

    fn sub(self, rhs: Self) -> VectorField<S> {
        let mut out = self.clone();
        out.add_assign_ref(&rhs.scale(&-S::one()));
        out
    }
}

impl<S: Scalar> Neg for &VectorField<S> {
    type Output = VectorField<S>;

    fn neg(self) -> VectorField<S> {
        self.scale(&-S::one())
    }
}

/// The standard contact form `α = dz + Σ(x_i dy_i - y_i dx_i) + Σ θ_j dθ_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ContactForm {
    space: ContactSpace,
}

impl ContactForm {
    pub fn new(space: ContactSpace) -> Self {
        ContactForm { space }
    }

    /// `⟨α, X⟩ = X^0 + Σ_{r,s} ω_{rs} X^s q^r`. Placing `q^r` to the right of
    /// `X^s` makes the pairing left-linear, so `⟨α, h T_r⟩ = 0` for every `h`.
    pub fn contract<S: Scalar>(&self, x: &VectorField<S>) -> Result<SuperPolynomial<S>> {
        self.space.check_same(&x.space())?;
        let space = self.space;
        let mut out = x.component(0).clone();
        for s in 1..=space.rank() {
            let r = space.omega_partner(s);
            let w = space.omega_lower(r, s);
            let qr = SuperPolynomial::coordinate(space, r)?;
            out.add_scaled(&(x.component(s) * &qr), &S::from_i64(w));
        }
        Ok(out)
    }
}

/// `T_r(g)` without materializing the field.
pub fn tangent_apply<S: Scalar>(r: usize, g: &SuperPolynomial<S>) -> SuperPolynomial<S> {
    let space = g.space();
    let k = space.omega_partner(r);
    let w = space.omega_lower(k, r);
    let mut out = g.partial(r).expect("distribution index in range");
    let dz = g.dz();
    if !dz.is_zero() {
        out.add_assign_ref(&dz.mul_monomial_left(&Monomial::coordinate(&space, k), &S::from_i64(-w)));
    }
    out
}

/// `X_f = f ∂_z - ½ (-1)^{f̃ r̃} ω^{rs} T_r(f) T_s`, summed over the
/// homogeneous parts of `f`.
pub fn contact_field<S: Scalar>(f: &SuperPolynomial<S>) -> VectorField<S> {
    let space = f.space();
    let mut x = VectorField::zero(space);
    for (pf, part) in f.homogeneous_parts() {
        x.coeffs[0].add_assign_ref(&part);
        for r in 1..=space.rank() {
            let s = space.omega_partner(r);
            let w = space.omega_upper(r, s);
            let tr = tangent_apply(r, &part);
            if tr.is_zero() {
                continue;
            }
            let c = sign::<S>(pf.koszul(space.parity(r))) * S::from_i64(-w) * S::half();
            let ts = VectorField::tangent(space, s).expect("partner in range");
            let term = ts.left_mul(&tr.scale(&c)).expect("same space");
            x.add_assign_ref(&term);
        }
    }
    x
}

/// `{f, g} := ⟨α, [X_f, X_g]⟩`.
pub fn lagrange_bracket<S: Scalar>(f: &SuperPolynomial<S>, g: &SuperPolynomial<S>) -> Result<SuperPolynomial<S>> {
    f.space().check_same(&g.space())?;
    let br = contact_field(f).bracket(&contact_field(g))?;
    ContactForm::new(f.space()).contract(&br)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type P = SuperPolynomial<Rational>;
    type V = VectorField<Rational>;

    fn sp(l: usize, n: usize) -> ContactSpace {
        ContactSpace::new(l, n).unwrap()
    }

    fn q(space: ContactSpace, a: usize) -> P {
        P::coordinate(space, a).unwrap()
    }

    #[test]
    fn tangent_fields_match_darboux_form() {
        let s = sp(1, 1);
        assert_eq!(V::tangent(s, 1).unwrap().to_string(), "y1*Dz + Dx1");
        assert_eq!(V::tangent(s, 2).unwrap().to_string(), "-x1*Dz + Dy1");
        assert_eq!(V::tangent(s, 3).unwrap().to_string(), "-th1*Dz + Dth1");
        assert!(V::tangent(s, 0).is_err());
        assert!(V::tangent(s, 4).is_err());
    }

    #[test]
    fn tangent_brackets() {
        let s = sp(1, 1);
        let t = |r| V::tangent(s, r).unwrap();
        let dz2 = V::reeb(s).scale(&Rational::from_i64(-2));
        assert_eq!(t(1).bracket(&t(2)).unwrap(), dz2);
        assert_eq!(t(3).bracket(&t(3)).unwrap(), dz2);
        assert!(V::reeb(s).bracket(&t(2)).unwrap().is_zero());
    }

    #[test]
    fn divergence_examples() {
        let s = sp(1, 1);
        assert!(V::reeb(s).divergence().is_zero());
        let x = V::coordinate(s, 3).unwrap().left_mul(&q(s, 3)).unwrap();
        assert_eq!(x.divergence(), P::constant(s, Rational::from_i64(-1)));
    }

    #[test]
    fn contraction_kills_distribution() {
        let s = sp(2, 2);
        let alpha = ContactForm::new(s);
        assert_eq!(alpha.contract(&V::reeb(s)).unwrap(), P::one(s));
        for r in 1..=s.rank() {
            let h = &q(s, 5) + &q(s, 1);
            let t = V::tangent(s, r).unwrap().left_mul(&h).unwrap();
            assert!(alpha.contract(&t).unwrap().is_zero());
        }
    }

    #[test]
    fn contact_field_of_constants_and_z() {
        let s = sp(1, 1);
        assert_eq!(contact_field(&P::one(s)), V::reeb(s));
        let xz = contact_field(&q(s, 0));
        assert_eq!(ContactForm::new(s).contract(&xz).unwrap(), q(s, 0));
    }

    #[test]
    fn contact_fields_close_under_bracket() {
        for (l, n) in [(1, 0), (0, 2), (1, 2)] {
            let s = sp(l, n);
            let monos = Monomial::all_up_to_degree(&s, 2);
            for a in &monos {
                for b in &monos {
                    let f = P::monomial(s, a.clone(), Rational::from_i64(1));
                    let g = P::monomial(s, b.clone(), Rational::from_i64(1));
                    let br = contact_field(&f).bracket(&contact_field(&g)).unwrap();
                    let h = lagrange_bracket(&f, &g).unwrap();
                    assert_eq!(contact_field(&h), br, "f = {f}, g = {g}");
                }
            }
        }
    }

    #[test]
    fn lagrange_with_one_is_dz() {
        let s = sp(1, 1);
        let f = &(&q(s, 0) * &q(s, 1)) + &q(s, 3);
        let b = lagrange_bracket(&P::one(s), &f).unwrap();
        assert_eq!(b, f.dz());
    }
}
