//! The density modules: tensor densities `Ber_λ` (action of all vector
//! fields through the divergence) and contact densities `F_λ` (action of
//! contact fields through `f' = ∂_z f`), and the isomorphism between them.

use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::{contact_field, VectorField};
use crate::scalar::Scalar;
use crate::superalgebra::SuperPolynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DensityKind {
    /// `g α^λ`
    Contact,
    /// `g |Dx|^λ`
    Tensor,
}

impl DensityKind {
    fn name(self) -> &'static str {
        match self {
            DensityKind::Contact => "contact",
            DensityKind::Tensor => "tensor",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Density<S> {
    value: SuperPolynomial<S>,
    weight: S,
    kind: DensityKind,
}

impl<S: Scalar> Density<S> {
    pub fn new(value: SuperPolynomial<S>, weight: S, kind: DensityKind) -> Self {
        Density { value, weight, kind }
    }

    pub fn contact(value: SuperPolynomial<S>, weight: S) -> Self {
        Self::new(value, weight, DensityKind::Contact)
    }

    pub fn tensor(value: SuperPolynomial<S>, weight: S) -> Self {
        Self::new(value, weight, DensityKind::Tensor)
    }

    pub fn value(&self) -> &SuperPolynomial<S> {
        &self.value
    }

    pub fn weight(&self) -> &S {
        &self.weight
    }

    pub fn kind(&self) -> DensityKind {
        self.kind
    }

    pub fn into_value(self) -> SuperPolynomial<S> {
        self.value
    }

    fn expect_kind(&self, kind: DensityKind) -> Result<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(Error::KindMismatch {
                expected: kind.name(),
                found: self.kind.name(),
            })
        }
    }

    /// Sum of two densities of the same kind and weight.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        other.expect_kind(self.kind)?;
        if self.weight != other.weight {
            return Err(Error::WeightMismatch {
                expected: self.weight.to_string(),
                found: other.weight.to_string(),
            });
        }
        Ok(Density::new(
            self.value.checked_add(&other.value)?,
            self.weight.clone(),
            self.kind,
        ))
    }
}

impl<S: Scalar> fmt::Display for Density<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            DensityKind::Contact => write!(f, "({}) alpha^({})", self.value, self.weight),
            DensityKind::Tensor => write!(f, "({}) |Dx|^({})", self.value, self.weight),
        }
    }
}

/// `𝕃_X^λ(g) = X(g) + λ div(X) g` on `Ber_λ`.
pub fn vect_action<S: Scalar>(x: &VectorField<S>, d: &Density<S>) -> Result<Density<S>> {
    d.expect_kind(DensityKind::Tensor)?;
    let mut value = x.apply(&d.value)?;
    let div = x.divergence();
    value.add_scaled(&(&div * &d.value), &d.weight);
    Ok(Density::tensor(value, d.weight.clone()))
}

/// `L_{X_f}^λ(g) = X_f(g) + λ f' g` on `F_λ`.
pub fn contact_action<S: Scalar>(f: &SuperPolynomial<S>, d: &Density<S>) -> Result<Density<S>> {
    d.expect_kind(DensityKind::Contact)?;
    f.space().check_same(&d.value.space())?;
    let mut value = contact_field(f).apply(&d.value)?;
    value.add_scaled(&(&f.dz() * &d.value), &d.weight);
    Ok(Density::contact(value, d.weight.clone()))
}

/// `g α^λ ↦ g |Dx|^{2λ/(sd+1)}` with `sd = 2l+1-n`.
pub fn phi_iso<S: Scalar>(d: &Density<S>) -> Result<Density<S>> {
    d.expect_kind(DensityKind::Contact)?;
    let space = d.value.space();
    let sd = space.superdimension();
    if sd == -1 {
        return Err(Error::UnsupportedSuperdimension(space));
    }
    let weight = S::from_i64(2) * d.weight.clone() / S::from_i64(sd + 1);
    Ok(Density::tensor(d.value.clone(), weight))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::ContactSpace;
    use crate::Rational;

    type P = SuperPolynomial<Rational>;

    fn sp(l: usize, n: usize) -> ContactSpace {
        ContactSpace::new(l, n).unwrap()
    }

    fn r(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn reeb_acts_by_dz() {
        let s = sp(1, 1);
        let z = P::coordinate(s, 0).unwrap();
        let out = vect_action(&VectorField::reeb(s), &Density::tensor(z, r(5))).unwrap();
        assert_eq!(out.value(), &P::one(s));
    }

    #[test]
    fn theta_euler_field_on_constant() {
        let s = sp(1, 1);
        let x = VectorField::coordinate(s, 3)
            .unwrap()
            .left_mul(&P::coordinate(s, 3).unwrap())
            .unwrap();
        let out = vect_action(&x, &Density::tensor(P::one(s), r(1))).unwrap();
        assert_eq!(out.value(), &P::constant(s, r(-1)));
    }

    #[test]
    fn contact_action_examples() {
        let s = sp(1, 1);
        let z = P::coordinate(s, 0).unwrap();
        let g = &z * &P::coordinate(s, 1).unwrap();
        let out = contact_action(&P::one(s), &Density::contact(g.clone(), r(3))).unwrap();
        assert_eq!(out.value(), &g.dz());
        let out = contact_action(&z, &Density::contact(P::one(s), r(1))).unwrap();
        assert_eq!(out.value(), &P::one(s));
    }

    #[test]
    fn kinds_are_enforced() {
        let s = sp(1, 0);
        let d = Density::contact(P::one(s), r(1));
        assert!(vect_action(&VectorField::reeb(s), &d).is_err());
        assert!(contact_action(&P::one(s), &Density::tensor(P::one(s), r(1))).is_err());
        assert!(d.checked_add(&Density::contact(P::one(s), r(2))).is_err());
    }

    #[test]
    fn phi_rescales_weight() {
        let d = Density::contact(P::one(sp(1, 1)), r(3));
        assert_eq!(phi_iso(&d).unwrap().weight(), &r(2));
        let bad = Density::contact(P::one(sp(0, 2)), r(3));
        assert!(matches!(phi_iso(&bad), Err(Error::UnsupportedSuperdimension(_))));
    }

    #[test]
    fn phi_intertwines_for_z_and_x1() {
        let s = sp(1, 1);
        let f = P::coordinate(s, 0).unwrap();
        let g = P::coordinate(s, 1).unwrap();
        let d = Density::contact(g, r(1));
        let lhs = phi_iso(&contact_action(&f, &d).unwrap()).unwrap();
        let rhs = vect_action(&contact_field(&f), &phi_iso(&d).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(rhs.weight(), &Rational::new(2, 3));
    }
}
