use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: io::Error },
    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] rankrange::error::Error),
}

impl CliError {
    /// 2 for unreadable input, 3 for inputs that parse but violate a requirement.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) | CliError::Read { .. } => 2,
            CliError::Write { .. } | CliError::Invalid(_) | CliError::Core(_) => 3,
        }
    }
}
