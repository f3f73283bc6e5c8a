use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |m_ij - conj(m_ji)| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("trace deviates from one by {deviation:e}")]
    TraceDeviation { deviation: f64 },

    #[error("matrix has negative eigenvalue {min_eigenvalue:e}")]
    NegativeEigenvalue { min_eigenvalue: f64 },

    #[error("parameter `{name}` = {value} is outside {range}")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("preparation angle {alpha} rad is outside [0, pi/4]")]
    AngleOutOfRange { alpha: f64 },

    #[error("l1 coherence {value} is outside [0, 1]")]
    CoherenceOutOfRange { value: f64 },

    #[error("integration step {dt} is invalid for t = {t}")]
    StepSizeInvalid { dt: f64, t: f64 },

    #[error("channels have different excitation weights p = {first} and p = {second}")]
    MismatchedTemperature { first: f64, second: f64 },

    #[error("equilibrium reference state is not diagonal (|rho_01| = {off_diagonal:e})")]
    ReferenceNotDiagonal { off_diagonal: f64 },

    #[error("entropy production is indeterminate (infinity minus infinity); use p < 1 or r > 0")]
    Indeterminate,

    #[error("{quantity} = {value:e} violates its non-negativity or additivity bound")]
    ConsistencyViolation { quantity: &'static str, value: f64 },

    #[error("invalid count record: {0}")]
    InvalidRecord(String),

    #[error("invalid sweep configuration: {0}")]
    ConfigInvalid(String),

    #[error("no rows to emit")]
    EmptyRows,

    #[error("i/o failure on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
