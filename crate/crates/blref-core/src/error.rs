//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero polynomial")]
    DivisionByZeroPolynomial,

    #[error("division by zero rational function")]
    DivisionByZeroRationalFunction,

    #[error("the zero polynomial has no positivity certificate")]
    ZeroPolynomial,

    #[error("evaluation at a pole: x = {0}")]
    PoleAt(String),

    #[error("pole on the integration path near x = {0}")]
    PoleOnPath(f64),

    #[error("measure not finite")]
    MeasureNotFinite,

    #[error("unsupported potential class")]
    UnsupportedPotentialClass,

    #[error("non-convex potential: V'' is not positive on the domain")]
    NonConvexPotential,

    #[error("refinement sequence exhausted")]
    SequenceExhausted,

    #[error("non-integrable term")]
    NonIntegrableTerm,

    #[error("index out of range: {0}")]
    IndexOutOfRange(usize),

    #[error("invalid bracket: positivity status must differ at the endpoints")]
    InvalidBracket,

    #[error("invalid rational literal: {0:?}")]
    InvalidRational(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
