use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("schema error at `{path}`: {message}")]
    Schema { path: String, message: String },
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("pair `{id}`: {source}")]
    Pair {
        id: String,
        #[source]
        source: ncc_core::Error,
    },
    #[error(transparent)]
    Core(#[from] ncc_core::Error),
}

impl CliError {
    pub(crate) fn schema(path: impl Into<String>, message: impl ToString) -> Self {
        CliError::Schema { path: path.into(), message: message.to_string() }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
