use std::path::PathBuf;
use std::time::Duration;

use sdepth_core::format::ParseError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("{path}:{source}")]
    Parse { path: String, source: ParseError },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("timed out after {0:.1?}")]
    Timeout(Duration),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

impl LabError {
    /// Process exit status: 2 for bad input, 3 for timeouts, 4 when a result
    /// fails its own verification, 1 for I/O trouble.
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Parse { .. } | LabError::Invalid(_) => 2,
            LabError::Timeout(_) => 3,
            LabError::Verification(_) => 4,
            LabError::Io { .. } => 1,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        LabError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<sdepth_core::Error> for LabError {
    fn from(e: sdepth_core::Error) -> Self {
        match e {
            sdepth_core::Error::Timeout(d) => LabError::Timeout(d),
            sdepth_core::Error::Unverified(msg) => LabError::Verification(msg),
            other => LabError::Invalid(other.to_string()),
        }
    }
}
