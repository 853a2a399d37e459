use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter lies outside its admissible domain.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// A requested configuration cannot be realized (e.g. the configuration
    /// model balance equation has no solution in [0, 1]).
    #[error("infeasible parameters: {0}")]
    Infeasible(String),

    /// A numeric routine was evaluated outside its domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Not enough data points to perform a regression.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// Malformed input text (edge lists, distribution tables, configs).
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Invalid experiment specification.
    #[error("invalid sweep spec, field `{field}`: {reason}")]
    Spec { field: String, reason: String },

    #[error("unknown preset `{name}`; available presets: {catalog}")]
    UnknownPreset { name: String, catalog: String },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn spec(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Spec {
            field: field.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
