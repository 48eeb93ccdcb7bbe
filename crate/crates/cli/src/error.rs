use std::path::PathBuf;

use histeq::PnmError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Decode {
        path: PathBuf,
        #[source]
        source: PnmError,
    },
    #[error("no loadable images in {}", .0.display())]
    NoImages(PathBuf),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit status: 2 for I/O and parse failures, 3 for usage errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 3,
            _ => 2,
        }
    }
}
