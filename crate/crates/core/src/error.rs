use std::path::PathBuf;

use thiserror::Error;

/// Failure modes of the iterative linear solvers.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum SolverError {
    #[error("no convergence after {iterations} iterations (relative residual {residual:.3e})")]
    NotConverged { iterations: usize, residual: f64 },
    #[error("breakdown at iteration {iteration}: {reason}")]
    Breakdown { iteration: usize, reason: &'static str },
    #[error("dimension mismatch: operator has {expected} rows, vector has {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration for `{field}`: {message}")]
    Config { field: String, message: String },
    #[error("failed to parse configuration: {0}")]
    ConfigParse(String),
    #[error("unsupported spatial dimension {0} (expected 2 or 3)")]
    UnsupportedDimension(usize),
    #[error("mesh has no elements")]
    EmptyMesh,
    #[error("singular block for element {element}")]
    SingularBlock { element: usize },
    #[error("{stage} solve failed: {source}")]
    Solve {
        stage: &'static str,
        #[source]
        source: SolverError,
    },
    #[error("step {step}: {source}")]
    Step {
        step: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn config(field: &str, message: impl Into<String>) -> Self {
        Error::Config {
            field: field.to_string(),
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
