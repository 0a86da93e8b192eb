use std::path::PathBuf;
use thiserror::Error;

/// Failures of a CLI run, each mapped to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration rejected: {0}")]
    Config(blowdown::Error),

    #[error("invalid argument: {0}")]
    Usage(String),

    #[error("numerical failure: {0}")]
    Numeric(#[from] blowdown::Error),

    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),

    #[error("json output: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// `1` for numerical failures, `2` for usage, configuration and I/O errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Numeric(_) => 1,
            _ => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
