//! Supercommutative polynomial arithmetic over the coordinates
//! `z, x_1..x_l, y_1..y_l, θ_1..θ_n` of the contact superspace.

mod monomial;
mod polynomial;
mod space;

pub(crate) use monomial::merge_sign;
pub use monomial::Monomial;
pub use polynomial::SuperPolynomial;
pub use space::{ContactSpace, CoordKind, Parity, ParityClass};
