use thiserror::Error;

/// Library-wide error type. Every variant maps onto one of the CLI's
/// machine-parsable categories: parse | validation | reducible | singular |
/// truncated.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed spec strings, unreadable or malformed input files.
    #[error("{0}")]
    Parse(String),

    /// Structural invariants violated: bad Cayley tables, incomplete irrep
    /// sets, shape mismatches, out-of-range arguments.
    #[error("{0}")]
    Validation(String),

    /// The support of the step distribution does not generate the group.
    #[error("{0}")]
    Reducible(String),

    /// Numerically singular spectrum or indefinite covariance.
    #[error("{0}")]
    Singular(String),

    /// A simulation hit its step cap before covering.
    #[error("{0}")]
    Truncated(String),
}

impl Error {
    /// Single-token category used on the first line of CLI error output.
    pub fn category(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::Validation(_) => "validation",
            Error::Reducible(_) => "reducible",
            Error::Singular(_) => "singular",
            Error::Truncated(_) => "truncated",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Parse(format!("io error: {e}"))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
