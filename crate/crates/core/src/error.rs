use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("p must lie in (0,1), got {0}")]
    InvalidProbability(f64),
    #[error("N must be at least 1, got {0}")]
    InvalidLevel(usize),
    #[error("polynomial degree {degree} exceeds N = {n}")]
    DegreeTooLarge { degree: usize, n: usize },
    #[error("non-finite input: {0}")]
    NonFinite(String),
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("matrix is not skew-Hermitian: max |G + G^H| = {deviation:e}")]
    NotSkewHermitian { deviation: f64 },
    #[error("matrix is not Hermitian: max |M - M^H| = {deviation:e}")]
    NotHermitian { deviation: f64 },
    #[error("eigen-solver did not converge after {0} sweeps")]
    NoConvergence(usize),
    #[error("recurrence cannot be extended to degree {degree}: b_{index} = 0")]
    RecurrenceBreakdown { degree: usize, index: usize },
    #[error("negative radicand {radicand:e} in alpha at xi = {xi}")]
    NegativeRadicand { xi: f64, radicand: f64 },
    #[error("coefficient extraction needs |z| > 0")]
    ZeroDisplacement,
    #[error("evaluation point {0} is not a lattice point 0..=N")]
    OffLattice(f64),
    #[error("calibration failed: {0}")]
    Calibration(String),
}

pub type Result<T> = std::result::Result<T, Error>;
