//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {what}: expected {expected}, got {got}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("{what} is not finite at index {index}")]
    NonFinite { what: String, index: usize },

    #[error("factorization of {what} failed: {detail}")]
    Factorization { what: &'static str, detail: String },

    #[error("inducing rows {i} and {j} coincide within 1e-12; K_mm would be singular")]
    DuplicateInducingRows { i: usize, j: usize },

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("empty data: {0}")]
    EmptyData(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("worker {worker} failed at version {version}: {message}")]
    WorkerFault {
        worker: usize,
        version: u64,
        message: String,
    },

    #[error("model artifact error: {0}")]
    ModelFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
