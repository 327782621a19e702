use crate::exact::Mode;

/// Crate-wide error type.
///
/// Everything user-triggerable (bad input files, mismatched dimensions,
/// resource budgets) surfaces as one of these variants. `Internal` marks a
/// violated mathematical invariant: the computation cannot be trusted and
/// callers should report it as an inconsistency, not as bad input.
#[derive(thiserror::Error, Debug)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("scalar mode mismatch: expected {expected:?}, got {got:?}")]
    ModeMismatch { expected: Mode, got: Mode },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("resource budget exceeded: {0}")]
    Budget(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
