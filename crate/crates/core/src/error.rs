use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("quadrature did not converge: value {value:e}, error estimate {error_estimate:e}")]
    NonConvergence { value: f64, error_estimate: f64 },

    #[error("non-positive mass at q = {q}: inverse mass {inverse_mass:e}")]
    NonPositiveMass { q: f64, inverse_mass: f64 },

    #[error("initial data inconsistent with energy: expected {expected}, got {actual}")]
    InconsistentEnergy { expected: f64, actual: f64 },

    #[error("step size control failed at t = {t} (h = {h:e})")]
    StepFailure { t: f64, h: f64 },

    #[error("trajectory neither surpassed nor reflected before t = {t_end}")]
    DidNotResolve { t_end: f64 },

    #[error("argument outside domain: {0}")]
    Domain(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
