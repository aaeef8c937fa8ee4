use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("invalid data: {0}")]
    InvalidData(String),

    #[error("vertex {0} has zero degree in the affinity matrix")]
    IsolatedPoint(usize),

    #[error("vertex subset is not connected ({components} components)")]
    Disconnected { components: usize },

    #[error("eigensolver did not converge after {iterations} iterations (residual {residual:e})")]
    Solver { iterations: usize, residual: f64 },

    #[error("cannot compare a normalized diagram with an unnormalized one")]
    UnitMismatch,

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("invalid config field `{field}`: {message}")]
    Config { field: String, message: String },

    #[error("sample {index} exhausted {attempts} generation attempts (requested {requested})")]
    GenerationExhausted {
        index: usize,
        attempts: usize,
        requested: String,
    },

    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error("{0}")]
    Harness(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            message: message.into(),
        }
    }
}
