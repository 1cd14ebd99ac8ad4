//! Error classification and exit codes.
//!
//! Every failure maps to one of four documented exit codes so scripts can
//! tell misconfiguration from bad data, failed gates and plain I/O trouble.

use std::fmt;

pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_GATE: i32 = 4;
pub const EXIT_IO: i32 = 5;

#[derive(Debug)]
pub enum CliError {
    /// Unreadable or malformed configuration, script, mapping or flags.
    Config(String),
    /// Inputs that parse but violate a contract.
    Validation(String),
    /// A calibration gate failed or a mapping is infeasible.
    Gate(String),
    /// Filesystem or image I/O failure.
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Gate(_) => EXIT_GATE,
            CliError::Io(_) => EXIT_IO,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Validation(_) => "validation",
            CliError::Gate(_) => "gate",
            CliError::Io(_) => "io",
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (CliError::Config(msg)
        | CliError::Validation(msg)
        | CliError::Gate(msg)
        | CliError::Io(msg)) = self;
        write!(f, "{} error: {msg}", self.kind())
    }
}

impl std::error::Error for CliError {}
