use thiserror::Error;

use crate::superalgebra::ContactSpace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("contact space mismatch: {left} vs {right}")]
    SpaceMismatch { left: ContactSpace, right: ContactSpace },
    #[error("coordinate index {index} out of range for {space}")]
    IndexOutOfRange { index: usize, space: ContactSpace },
    #[error("too many odd coordinates: n = {0} (at most 32 supported)")]
    TooManyOddCoordinates(usize),
    #[error("weight mismatch: expected {expected}, found {found}")]
    WeightMismatch { expected: String, found: String },
    #[error("density kind mismatch: expected {expected}, found {found}")]
    KindMismatch {
        expected: &'static str,
        found: &'static str,
    },
    #[error("superdimension 2l+1-n = -1 is unsupported for {0}")]
    UnsupportedSuperdimension(ContactSpace),
    #[error("operator has {filtration} order {found}, above the requested {requested}")]
    OrderExceeded {
        filtration: &'static str,
        found: String,
        requested: String,
    },
    #[error("{0} is not in the spo span")]
    OutsideSpo(String),
    #[error("spo closure failed: {{{left}, {right}}} = {bracket} leaves the span")]
    ClosureFailure {
        left: String,
        right: String,
        bracket: String,
    },
    #[error("symbol is not homogeneous for the {0} grading")]
    NotHomogeneous(&'static str),
    #[error("{0} is not a vector field")]
    NotVectorField(String),
    #[error("{0}")]
    Expression(String),
}

pub type Result<T> = std::result::Result<T, Error>;
