use std::path::PathBuf;

use thiserror::Error;

/// Failure of a CLI run, mapped onto the process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed or incomplete configuration. The message names the key.
    #[error("config error: {0}")]
    Config(String),
    #[error("numerical error: {0}")]
    Numerical(#[from] eapkit::Error),
    #[error("i/o error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            // an unknown material label is a config mistake, not a numerical one
            CliError::Numerical(eapkit::Error::UnknownMaterial { .. }) => 1,
            CliError::Config(_) => 1,
            CliError::Numerical(_) => 2,
            CliError::Io { .. } => 3,
        }
    }

    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
