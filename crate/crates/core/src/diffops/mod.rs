//! Differential operators `F_λ → F_μ` in coordinate form `Σ D_I ∂^I`, the
//! normal form `Σ D_{cK} ∂_z^c A^I B^J D̄^T`, the contact-field action on
//! operators and the three order functions.

mod normal_form;
mod operator;
mod order;

pub(crate) use normal_form::render_term;
pub use normal_form::{NormalForm, Word};
pub use operator::{lie_derivative, DiffOperator, MultiIndex};
pub use order::HalfInt;
