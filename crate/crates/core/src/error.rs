use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input text (Cartan labels, rationals, element specs).
    #[error("parse error: {0}")]
    Parse(String),
    /// A mathematical precondition does not hold (degenerate level, non-central input, ...).
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// The requested computation is outside the supported range.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// Refused because the problem would be too large.
    #[error("resource limit: {0}")]
    Resource(String),
    /// Internal consistency check failed.
    #[error("inconsistent: {0}")]
    Inconsistent(String),
}

impl Error {
    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 2,
            Error::Precondition(_) | Error::Unsupported(_) | Error::Inconsistent(_) => 3,
            Error::Resource(_) => 4,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
