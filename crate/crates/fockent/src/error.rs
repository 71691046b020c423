use std::fmt;
use std::process::ExitCode;

use serde::Serialize;

/// Failure classes of the command line, each with its own exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorKind {
    /// A `verify` check failed.
    Verification,
    /// Arguments, input files or output paths were rejected.
    Validation,
    /// A computation failed to converge or produced an unphysical result.
    Numerical,
}

impl ErrorKind {
    pub fn exit_code(self) -> u8 {
        match self {
            ErrorKind::Verification => 1,
            ErrorKind::Validation => 2,
            ErrorKind::Numerical => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{message}")]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
}

impl CliError {
    pub fn validation(message: impl fmt::Display) -> Self {
        Self { kind: ErrorKind::Validation, message: message.to_string() }
    }

    pub fn numerical(message: impl fmt::Display) -> Self {
        Self { kind: ErrorKind::Numerical, message: message.to_string() }
    }

    pub fn verification(message: impl fmt::Display) -> Self {
        Self { kind: ErrorKind::Verification, message: message.to_string() }
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.kind.exit_code())
    }

    /// Single-line JSON rendering for the diagnostic stream.
    pub fn to_json_line(&self) -> String {
        let value = serde_json::json!({
            "error": {
                "kind": self.kind,
                "exit_code": self.kind.exit_code(),
                "message": self.message,
            }
        });
        serde_json::to_string(&value).expect("error JSON serializes")
    }
}

impl From<fockent_core::Error> for CliError {
    fn from(err: fockent_core::Error) -> Self {
        use fockent_core::Error as E;
        match err {
            E::NotHermitian { .. }
            | E::NoConvergence { .. }
            | E::NegativeEigenvalue(_)
            | E::NoInteriorMinimum { .. } => CliError::numerical(err),
            _ => CliError::validation(err),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::validation(err)
    }
}

pub type CliResult<T> = Result<T, CliError>;
