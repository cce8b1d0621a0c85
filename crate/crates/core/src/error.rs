use thiserror::Error;

/// Errors raised by the Wick algebra, the numerics and the inequality checkers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum WickError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("multi-index {degrees:?} exceeds the declared maximum degree {max_degree}")]
    DegreeOverflow { degrees: Vec<u32>, max_degree: u32 },

    #[error("invalid exponent: {0}")]
    InvalidExponent(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("boundary decay check failed: |f| = {value:e} at the box edge exceeds {tolerance:e}; enlarge the extent")]
    BoundaryDecay { value: f64, tolerance: f64 },

    #[error("quadrature order {0} outside the supported range 1..=200")]
    QuadratureOrder(usize),

    #[error("non-finite value at node {0:?}")]
    NonFinite(Vec<f64>),

    #[error("zero denominator: {0}")]
    ZeroDenominator(String),

    #[error("optimizer did not converge after {iterations} sweeps")]
    NoConvergence { iterations: usize },

    #[error("no counterexample: {0}")]
    NoCounterexample(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("serialization: {0}")]
    Serde(String),

    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, WickError>;

impl From<serde_json::Error> for WickError {
    fn from(err: serde_json::Error) -> Self {
        WickError::Serde(err.to_string())
    }
}

impl From<std::io::Error> for WickError {
    fn from(err: std::io::Error) -> Self {
        WickError::Io(err.to_string())
    }
}
