use std::io;

use thiserror::Error;

/// Errors raised anywhere in the crate.
///
/// The variants line up with the CLI exit codes, see [`Error::exit_code`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("graph too small for the configured regime: {0}")]
    Scale(String),

    #[error("partition refinement exhausted: {0}")]
    Exhaustion(Box<crate::regularity::ExhaustionDiagnostics>),

    #[error("contract violation: {0}")]
    Violation(String),

    #[error("Erdős–Hajnal hypothesis violated: {0}")]
    EhHypothesis(String),

    #[error("internal invariant failed: {0}")]
    InternalInvariant(String),

    #[error("digest mismatch: {0}")]
    DigestMismatch(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn arg(message: impl Into<String>) -> Self {
        Error::Argument(message.into())
    }

    /// Stable process exit code for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 3,
            Error::Scale(_) => 4,
            Error::Exhaustion(_) => 5,
            Error::DigestMismatch(_) => 6,
            Error::Capacity(_) => 7,
            Error::Violation(_) | Error::EhHypothesis(_) | Error::InternalInvariant(_) => 8,
            Error::Argument(_) | Error::Io(_) => 1,
        }
    }
}
