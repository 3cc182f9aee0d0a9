use thiserror::Error;

/// Errors raised by the symbolic routes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different variable contexts")]
    ContextMismatch,
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("variable `{0}` is missing from the target context")]
    MissingVariable(String),
    #[error("expected {expected} exponents, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("polynomial division is not exact")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("denominator factor has zero degree and no power series expansion")]
    ZeroDegreeFactor,
    #[error("invalid denominator factor: {0}")]
    InvalidFactor(String),
    #[error("denominator is not contained in the target denominator")]
    NotContained,
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("point is not a member of the cone")]
    NonMember,
    #[error("elimination variable `{var}` occurs with exponent {exponent} in a factor")]
    BadEliminationExponent { var: String, exponent: i32 },
    #[error("`{0}` is not an elimination variable of this form")]
    NotEliminationVariable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("json error: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
