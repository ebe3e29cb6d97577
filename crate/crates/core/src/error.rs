use thiserror::Error;

/// Errors raised by the library. Each variant maps onto a CLI exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("invariant violation: {0}")]
    Invariant(String),
    #[error("unsupported for ring `{ring}`: {operation}")]
    Unsupported { ring: String, operation: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unknown example `{0}`")]
    UnknownExample(String),
    #[error("normalization did not terminate within {0} steps")]
    IterationCap(usize),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn unsupported(ring: impl Into<String>, operation: impl Into<String>) -> Self {
        Error::Unsupported {
            ring: ring.into(),
            operation: operation.into(),
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Schema(_) | Error::UnknownExample(_) | Error::Io(_) => 2,
            Error::Invariant(_) => 3,
            Error::Unsupported { .. } => 4,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
