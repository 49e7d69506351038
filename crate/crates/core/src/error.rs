use thiserror::Error;

/// Failure categories shared by every module.
///
/// The CLI maps input-side categories (`Parse`, `Structural`, `CorruptInput`,
/// `Validation`, `Precondition`, `SizeCap`) to exit code 2 and mathematical
/// ones (`Hypothesis`, `Consistency`) to exit code 1.
#[derive(Debug, Error)]
pub enum Error {
    #[error("structural error: {0}")]
    Structural(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("corrupt input: {0}")]
    CorruptInput(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("pipeline hypothesis failed: {0}")]
    Hypothesis(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("size cap exceeded: {0}")]
    SizeCap(String),
}

impl Error {
    /// True for failures of mathematical checks rather than of the input.
    pub fn is_mathematical(&self) -> bool {
        matches!(self, Error::Hypothesis(_) | Error::Consistency(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
