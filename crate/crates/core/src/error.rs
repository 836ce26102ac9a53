use thiserror::Error;

/// Errors raised by the invariant computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid slope p={p}, q={q}: need p >= 1, q != 0 and gcd(p, |q|) = 1")]
    InvalidSlope { p: i64, q: i64 },

    #[error("Alexander polynomial is not normalized: Delta(1) = {value}, expected 1")]
    Normalization { value: i128 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid relative Spin^c label {0}: labels of the knot exterior are odd integers")]
    InvalidLabel(i64),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot parse {input:?} as a rational number")]
    ParseRational { input: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
