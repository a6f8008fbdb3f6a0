use thiserror::Error;

/// Errors raised by constructors and arithmetic.
///
/// A failed mathematical check is never an `Error`; it is reported through
/// [`crate::report::Check`] with status `Fail`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("constraint violation: {0}")]
    ConstraintViolation(String),
    #[error("internal arithmetic inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
