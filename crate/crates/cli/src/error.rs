//! CLI error type and its mapping to exit codes.

use std::fmt;

#[derive(Debug)]
pub enum CliError {
    /// Bad or inconsistent arguments.
    Usage(String),
    Core(sdcap_core::Error),
    Io(std::io::Error),
}

impl CliError {
    /// 2 for usage and domain errors, 3 for an exceeded evaluation budget,
    /// 1 for I/O failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(sdcap_core::Error::BudgetExceeded { .. }) => 3,
            CliError::Usage(_) | CliError::Core(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<sdcap_core::Error> for CliError {
    fn from(e: sdcap_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        if e.is_io() {
            CliError::Io(e.into())
        } else {
            CliError::Usage(format!("malformed JSON: {e}"))
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(std::io::Error::other(e))
    }
}

pub fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}
