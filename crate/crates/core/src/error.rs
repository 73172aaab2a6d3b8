use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("more initial terms needed: coefficient {index} is not determined by the recurrence (undetermined: {blocking:?})")]
    NeedsMoreInitialTerms { index: usize, blocking: Vec<usize> },
    #[error("no exponent bound available: the operator is not Fuchsian, supply E explicitly")]
    NeedsExponentBound,
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    /// Stable machine-readable code, used by the CLI and the Python bindings.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid-input",
            Error::DivisionByZero => "division-by-zero",
            Error::Unsupported(_) => "unsupported",
            Error::NeedsMoreInitialTerms { .. } => "needs-more-initial-terms",
            Error::NeedsExponentBound => "needs-exponent-bound",
            Error::Inconsistent(_) => "inconsistent",
            Error::Parse { .. } => "parse-error",
        }
    }
}
