use std::fmt::Display;

use qdelta_core::Error as CoreError;

/// Failures of a command, split by exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Malformed flags, parameters or input files (exit status 2).
    #[error("usage error: {0}")]
    Usage(String),
    /// A computation failed on well-formed input (exit status 1).
    #[error("{0}")]
    Math(CoreError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn usage(msg: impl Display) -> Self {
        CliError::Usage(msg.to_string())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Math(_) => 1,
            _ => 2,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InvalidPrime(_)
            | CoreError::InvalidContext(_)
            | CoreError::Parameter(_)
            | CoreError::Parse(_) => CliError::Usage(e.to_string()),
            other => CliError::Math(other),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
