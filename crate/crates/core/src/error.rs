use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension {dim} is too small (need d >= {min})")]
    DimensionTooSmall { dim: usize, min: usize },

    #[error("matrix is not square: row {row} has {len} entries, expected {dim}")]
    NotSquare { dim: usize, row: usize, len: usize },

    #[error("matrix contains a non-finite entry at ({i}, {j})")]
    NonFinite { i: usize, j: usize },

    #[error("state is not Hermitian: |rho[{i}][{j}] - conj(rho[{j}][{i}])| = {deviation:e}")]
    NotHermitian { i: usize, j: usize, deviation: f64 },

    #[error("trace is not one: tr(rho) = {re} + {im}i")]
    TraceNotOne { re: f64, im: f64 },

    #[error("state is not positive semidefinite: smallest eigenvalue {min_eigenvalue:e}")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("invalid family parameters: {0}")]
    InvalidFamilyParams(String),

    #[error("invalid p = {p}: {reason}")]
    InvalidP { p: f64, reason: &'static str },

    #[error("negative radicand {value:e} while computing {quantity}")]
    NegativeRadicand { quantity: &'static str, value: f64 },

    #[error("{operation} requires a strict (positive semidefinite) state")]
    RequiresStrict { operation: &'static str },

    #[error("number of trials must be at least 1")]
    InvalidTrials,

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
