use thiserror::Error;

/// Errors raised while building, analysing or simulating models.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid operator: {0}")]
    InvalidOperator(String),

    #[error("malformed PDE specification: {0}")]
    MalformedPde(String),

    #[error("unsupported PDE class: {0}")]
    UnsupportedPde(String),

    #[error("truncation mismatch: {0}")]
    Truncation(String),

    #[error("iteration did not converge within {passes} passes; lowest non-vanishing residual at gamma^{gamma} eps^{eps}")]
    NonConvergence { passes: usize, gamma: u32, eps: u32 },

    #[error("non-canonical model: residue in {0}")]
    NonCanonical(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("time step {dt} exceeds the estimated stability limit {limit}")]
    UnstableStep { dt: f64, limit: f64 },

    #[error("integration aborted at step {step}: non-finite state")]
    NonFinite { step: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
