use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: symmetry defect {defect:.3e} exceeds {tolerance:.3e}")]
    NonHermitianInput { defect: f64, tolerance: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("site {site} out of range for a chain of {n} spins")]
    SiteOutOfRange { site: usize, n: usize },

    #[error("energy vector has length {found}, chain has {expected} spins")]
    LengthMismatch { expected: usize, found: usize },

    #[error("state is not normalized: norm {norm:.12}")]
    NotNormalized { norm: f64 },

    #[error("invalid chain: {0}")]
    InvalidChain(String),

    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    #[error("invalid encoding: {0}")]
    InvalidEncoding(String),

    #[error("no revival above {threshold} in window [{start}, {end}] (best p = {best:.6})")]
    NoRevivalFound { threshold: f64, start: f64, end: f64, best: f64 },

    #[error("leakage {leakage:.3e} exceeds {limit:.3e}; extracted gate is meaningless")]
    ExcessiveLeakage { leakage: f64, limit: f64 },

    #[error("matrix is not unitary (defect {defect:.3e})")]
    NotUnitary { defect: f64 },

    #[error("CNOT synthesis with {n_uses} uses reached F = {best_fidelity:.9}, below {required}")]
    SynthesisFailed { n_uses: usize, best_fidelity: f64, required: f64 },

    #[error("gate is not locally diagonal (off-diagonal residual {residual:.3e})")]
    NotDiagonalizableLocally { residual: f64 },

    #[error("invalid even/odd grouping: {0}")]
    InvalidGrouping(String),

    #[error("optimizer failure: {0}")]
    Optimizer(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("I/O failure on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
