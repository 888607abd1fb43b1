use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use bell_frt::bellmodels::BellError;
use bell_frt::freealg::FreeAlgError;
use bell_frt::linalg::LinalgError;
use bell_frt::reptheory::RepError;
use bell_frt::scalar::ScalarError;

pub const EXIT_MALFORMED: i32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Inconclusive => 2,
        }
    }

    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommandReport {
    pub command: String,
    pub status: Option<Status>,
    pub details: Value,
    #[serde(rename = "exitCode")]
    pub exit_code: i32,
}

/// What a command computed: a verdict, a JSON payload and a plain-text rendering.
pub struct Outcome {
    pub status: Status,
    pub details: Value,
    pub text: String,
}

impl Outcome {
    pub fn into_report(self, command: &str) -> (CommandReport, String) {
        let r = CommandReport {
            command: command.to_string(),
            status: Some(self.status),
            details: self.details,
            exit_code: self.status.exit_code(),
        };
        (r, self.text)
    }
}

/// Anything that makes the input unusable; always exit 64.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    FreeAlg(#[from] FreeAlgError),
    #[error(transparent)]
    Bell(#[from] BellError),
    #[error(transparent)]
    Rep(#[from] RepError),
}

impl CliError {
    pub fn into_report(self, command: &str) -> CommandReport {
        CommandReport {
            command: command.to_string(),
            status: None,
            details: serde_json::json!({ "error": self.to_string() }),
            exit_code: EXIT_MALFORMED,
        }
    }
}

pub fn read_file(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_string(), source })
}
