use std::fmt;
use std::process::ExitCode;

/// A failed command, classified by exit status.
#[derive(Debug)]
pub enum CliError {
    /// Malformed invocation (exit 2).
    Usage(String),
    /// Input that parses but is not acceptable (exit 3).
    Validation(String),
    /// Internal consistency fault (exit 4).
    Fault(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Usage(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Fault(_) => 4,
        })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Validation(m) => write!(f, "invalid input: {m}"),
            CliError::Fault(m) => write!(f, "internal fault: {m}"),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

pub fn invalid(e: impl fmt::Display) -> CliError {
    CliError::Validation(e.to_string())
}
