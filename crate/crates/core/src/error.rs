//! Crate-wide error type.

use std::path::Path;

/// Errors produced by corpus loading, graph construction, training and
/// evaluation.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A malformed line in an input file.
    #[error("{path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },

    /// Underlying I/O failure, annotated with the path involved.
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    /// An argument outside its documented range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Inputs that parse but violate a semantic contract.
    #[error("{0}")]
    Invalid(String),

    /// A taxonomy code with no reachable terminal profile.
    #[error("unmapped taxonomy code: {0}")]
    Unmapped(String),

    /// A statistic that is undefined because an input has no variance.
    #[error("zero variance: {0}")]
    ZeroVariance(String),

    /// Non-finite values appeared where finite math was required.
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        Error::Io {
            path: path.display().to_string(),
            source,
        }
    }

    pub(crate) fn parse(path: &Path, line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            path: path.display().to_string(),
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
