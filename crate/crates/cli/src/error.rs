//! CLI-level errors and their process exit codes.

use rootbandit_core::Error as CoreError;
use thiserror::Error;

/// What went wrong, bucketed by whose fault it is.
///
/// Exit codes: 0 success, 2 usage error (bad flags or values), 3 contract
/// error (a request the algorithms reject by design, like a fixed-budget
/// halving agent on a wall-clock budget), 1 internal failure.
#[derive(Debug, Error, PartialEq)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Contract(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Contract(_) => 3,
            CliError::Internal(_) => 1,
        }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            // The one by-design refusal, surfaced with its own exit code.
            CoreError::NotAnytime => CliError::Contract(e.to_string()),
            // Errors ordinary flag values can trigger.
            CoreError::BudgetTooSmall { .. }
            | CoreError::BadConfig(_)
            | CoreError::BadGameId(_)
            | CoreError::BadCheckpoints(_)
            | CoreError::TimeOutOfRange { .. }
            | CoreError::EmptyArms => CliError::Usage(e.to_string()),
            // Anything else reaching the CLI from a validated run is a bug.
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}
