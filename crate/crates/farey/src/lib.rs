//! Command-line front end, file formats and verification suites for
//! [`farey_core`].
//!
//! Every subcommand prints JSON by default and a flat CSV projection with
//! `--format csv`. Exit codes: 0 success, 1 a verdict failed, 2 bad input.

pub mod cli;
pub mod input;
pub mod output;
pub mod records;
pub mod suites;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Rejected input; exit code 2.
    #[error("{0}")]
    Usage(String),
    /// A computation could not finish; exit code 1.
    #[error("{0}")]
    Compute(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl From<farey_core::Error> for CliError {
    fn from(e: farey_core::Error) -> Self {
        use farey_core::Error as E;
        match e {
            E::NonConvergence { .. } | E::BracketFailure { .. } | E::DigitOverflow => CliError::Compute(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

/// Result of a subcommand that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    /// Output was produced but a checked property failed.
    Fail,
}

impl Outcome {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
        }
    }
}
