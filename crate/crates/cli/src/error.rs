use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("invalid job: {0}")]
    Json(#[from] serde_json::Error),

    #[error("invalid job: {0}")]
    Schema(String),

    #[error(transparent)]
    Core(#[from] parahoric_core::Error),

    #[error("oracle check failed: {0}")]
    SeedCheck(String),
}

impl CliError {
    /// 2 for problems with the input, 3 for internal failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_internal() => 3,
            CliError::SeedCheck(_) => 3,
            _ => 2,
        }
    }
}
