use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Numerical(#[from] rmtdiff::Error),

    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{0}")]
    Usage(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl CliError {
    /// 2 for usage and I/O problems (including rejected parameters), 3 for
    /// numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Numerical(rmtdiff::Error::InvalidParams(_) | rmtdiff::Error::DomainError(_)) => 2,
            CliError::Numerical(_) => 3,
            _ => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
