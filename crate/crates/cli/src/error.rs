use std::path::PathBuf;

use davenport_core::factorizer::FactorizerError;
use davenport_core::{GroupError, SeqError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{spec}: {source}")]
    Group { spec: String, source: GroupError },
    #[error(transparent)]
    Seq(#[from] SeqError),
    #[error(transparent)]
    Factorizer(#[from] FactorizerError),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}
