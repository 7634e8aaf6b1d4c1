use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid spline space: {0}")]
    InvalidSpace(String),

    #[error("coefficient vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("derivative of a degree-0 spline leaves the discrete complex")]
    DegreeZeroDerivative,

    #[error("charge density is not neutral: total {total:e} (tolerance {tolerance:e})")]
    IncompatibleCharge { total: f64, tolerance: f64 },

    #[error("matrix is not positive definite: {0}")]
    NotPositiveDefinite(&'static str),

    #[error("sobol dimension {requested} exceeds the supported maximum of {max}")]
    SobolDimension { requested: usize, max: usize },

    #[error("invalid particle count: {0}")]
    ParticleCount(String),

    #[error("growth-rate fit: {0}")]
    Fit(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
