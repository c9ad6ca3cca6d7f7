//! Library side of the `waring` command-line tool: input parsing, JSON
//! report records and the batch runner.

use std::fmt;

pub mod batch;
pub mod parse;
pub mod report;

pub use batch::{run_batch, BatchOutcome};
pub use parse::{parse_coeffs, parse_expression, parse_input};
pub use report::{
    build_report, error_record, invariants_report, orbit_report, ErrorRecord, InvariantsReport,
    OrbitReport, ReportOptions, ReportRecord,
};

/// Exit status for usage and parse errors.
pub const EXIT_USAGE: i32 = 1;
/// Exit status for mathematical errors such as the zero form.
pub const EXIT_MATH: i32 = 2;
/// Exit status when the self-check finds a mismatch.
pub const EXIT_SELFCHECK: i32 = 3;

#[derive(Clone, Debug, PartialEq)]
pub enum CliError {
    /// Malformed input; `position` is a 1-based character column.
    Parse {
        position: Option<usize>,
        message: String,
    },
    Math(waring_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } => EXIT_USAGE,
            CliError::Math(_) => EXIT_MATH,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "parse",
            CliError::Math(_) => "math",
        }
    }

    pub fn position(&self) -> Option<usize> {
        match self {
            CliError::Parse { position, .. } => *position,
            CliError::Math(_) => None,
        }
    }

    /// Moves a reported position right by `by` columns.
    pub fn shift(self, by: usize) -> Self {
        match self {
            CliError::Parse { position, message } => CliError::Parse {
                position: position.map(|p| p + by),
                message,
            },
            other => other,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse {
                position: Some(p),
                message,
            } => write!(f, "column {p}: {message}"),
            CliError::Parse { message, .. } => f.write_str(message),
            CliError::Math(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<waring_core::Error> for CliError {
    fn from(e: waring_core::Error) -> Self {
        CliError::Math(e)
    }
}
