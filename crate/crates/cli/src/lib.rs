//! Library half of the `fairspan` command: argument definitions, instance
//! I/O, reports and the sweep harness. `main.rs` only wires these to the
//! process.

pub mod args;
pub mod commands;
pub mod io;
pub mod report;
pub mod sweep;

use fairspan_core::oracles::DEFAULT_ENUM_CAP;

pub const EXIT_OK: u8 = 0;
pub const EXIT_CERTIFICATE: u8 = 1;
pub const EXIT_VALIDATION: u8 = 2;
pub const EXIT_CAP: u8 = 3;

/// Overrides the exhaustive-search cap (`m^n` allocations).
pub const CAP_ENV: &str = "FAIRSPAN_ENUM_CAP";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] fairspan_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(fairspan_core::Error::CapExceeded { .. }) => EXIT_CAP,
            _ => EXIT_VALIDATION,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

/// Enumeration cap from the environment, falling back to the library default.
pub fn enum_cap() -> Result<u64, CliError> {
    match std::env::var(CAP_ENV) {
        Ok(text) => text
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{CAP_ENV} must be a nonnegative integer, got {text:?}"))),
        Err(_) => Ok(DEFAULT_ENUM_CAP),
    }
}
