use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} spins, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("non-finite value {0}")]
    NonFinite(f64),

    #[error("invalid precision: {0} bits (supported range is 2..=64)")]
    InvalidPrecision(u32),

    #[error("invalid spin value {0} (spins must be -1 or +1)")]
    InvalidSpin(i64),

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("degenerate problem, no scale")]
    DegenerateProblem,

    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    #[error("problem has {qubits} qubits; the exact solver is limited to {limit}")]
    TooManyQubits { qubits: usize, limit: usize },

    #[error("invalid sampler configuration: {0}")]
    InvalidConfig(String),

    #[error("empty sample set")]
    EmptySampleSet,

    #[error("no comparison records to aggregate")]
    EmptyRecords,

    #[error("could not generate a non-degenerate problem after {0} attempts")]
    GenerationFailed(u32),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: {source}", path.display())]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("{}: {source}", path.display())]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error("{}: malformed record: {message}", path.display())]
    Format { path: PathBuf, message: String },
}
