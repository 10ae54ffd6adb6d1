//! Library half of the `graham-lab` binary, kept separate so the commands
//! can be driven from tests with an in-memory writer.

pub mod bfile;
pub mod cache;
mod commands;

pub use commands::{configure_threads, run, Cli, Command, OracleKind, Outcome, Span};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Capacity(String),
    #[error(transparent)]
    Other(#[from] anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Capacity(_) => 3,
            CliError::Other(_) => 1,
        }
    }
}

impl From<graham_core::Error> for CliError {
    fn from(e: graham_core::Error) -> Self {
        match e {
            graham_core::Error::CapacityExceeded { .. } => CliError::Capacity(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<bfile::BFileError> for CliError {
    fn from(e: bfile::BFileError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<cache::CacheError> for CliError {
    fn from(e: cache::CacheError) -> Self {
        CliError::Other(e.into())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Other(e.into())
    }
}
