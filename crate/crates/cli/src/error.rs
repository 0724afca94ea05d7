use thiserror::Error;

use crate::oeis::OeisError;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const USAGE: u8 = 1;
    pub const VERIFICATION_FAILED: u8 = 2;
    pub const NETWORK: u8 = 3;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
    #[error(transparent)]
    Oeis(#[from] OeisError),
    #[error("cannot write output: {0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Failed(_) => exit::VERIFICATION_FAILED,
            CliError::Oeis(e) if e.is_network() => exit::NETWORK,
            CliError::Oeis(_) => exit::USAGE,
            CliError::Output(_) => exit::USAGE,
        }
    }
}

impl From<bellkit_core::bell::BellError> for CliError {
    fn from(e: bellkit_core::bell::BellError) -> Self {
        use bellkit_core::bell::BellError;
        match e {
            BellError::PathMismatch { .. } => CliError::Failed(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<bellkit_core::SeriesError> for CliError {
    fn from(e: bellkit_core::SeriesError) -> Self {
        CliError::Usage(e.to_string())
    }
}
