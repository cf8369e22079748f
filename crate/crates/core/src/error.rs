use thiserror::Error;

/// Everything that can go wrong inside the simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension {0} is too small, need at least 2")]
    DimensionTooSmall(usize),

    #[error("vector is zero or its norm underflows")]
    ZeroVector,

    #[error("amplitudes must be finite real numbers")]
    NonFinite,

    #[error("vector is not normalized: norm is {norm}")]
    NotNormalized { norm: f64 },

    #[error("epsilon must be positive, got {0}")]
    InvalidEpsilon(f64),

    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("norm drifted by {drift:e} over the run")]
    NumericalDrift { drift: f64 },

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("{0} consecutive draws were degenerate")]
    DegenerateDraw(usize),

    #[error("cannot fit a line: {0}")]
    DegenerateFit(&'static str),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    /// True for errors that come from floating-point breakdown rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NumericalDrift { .. }
                | Error::NumericalFailure(_)
                | Error::DegenerateDraw(_)
                | Error::DegenerateFit(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
