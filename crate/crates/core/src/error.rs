use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the domain of the requested operation.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A fixed-width scalar could not hold an intermediate value.
    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("failed to write report to {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("malformed report: {0}")]
    Report(String),

    #[error("worker pool: {0}")]
    Pool(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
