//! Exact symbolic computation on the contact superspace ℝ^(2l+1|n).
//!
//! The crate models polynomial superfunctions, contact vector fields, the
//! density modules `F_λ` and `Ber_λ`, differential operators between
//! densities with their canonical, Heisenberg and bi-filtrations, the three
//! associated symbol spaces, and the explicit `spo(2l+2|n)` actions on
//! symbols together with a lift–act–project oracle that checks them.
//!
//! All types are generic over a [`Scalar`]; the aliases at the crate root fix
//! the exact rational field used by the CLI and the verification suite.

pub mod densities;
pub mod diffops;
pub mod error;
pub mod geometry;
pub mod scalar;
pub mod spo_action;
pub mod superalgebra;
pub mod symbols;
pub mod text;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub use superalgebra::{ContactSpace, Monomial, Parity, ParityClass};

/// Exact rational coefficients with machine-word numerator and denominator.
pub type Rational = num_rational::Rational64;
/// Arbitrary-precision rational coefficients.
pub type BigRational = num_rational::BigRational;

pub type SuperPoly = superalgebra::SuperPolynomial<Rational>;
pub type VectorField = geometry::VectorField<Rational>;
pub type Density = densities::Density<Rational>;
pub type DiffOperator = diffops::DiffOperator<Rational>;
pub type NormalForm = diffops::NormalForm<Rational>;
pub type SymbolPoly = symbols::SymbolPoly<Rational>;
