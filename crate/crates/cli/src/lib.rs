//! Command-line front end for qdeform: configuration, check and sweep runs,
//! and report emission.

pub mod config;
pub mod emit;
pub mod run;

use std::path::Path;

use qdeform_core::dsl::ParseError;
use qdeform_core::exotic::ExoticError;

/// Process exit status: pass, relation failure, configuration/build error.
pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_ERROR: u8 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}:{source}")]
    Parse { path: String, source: ParseError },
    #[error(transparent)]
    Build(#[from] ExoticError),
    #[error("cannot serialize report: {0}")]
    Serialize(String),
}

impl CliError {
    pub fn config(msg: impl std::fmt::Display) -> Self {
        CliError::Config(msg.to_string())
    }

    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}
