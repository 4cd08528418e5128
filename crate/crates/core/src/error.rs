use thiserror::Error;

/// Errors raised by the matrix, geometry and range engines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite value at entry ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("entry count {len} does not match {rows}x{cols}")]
    ShapeMismatch { rows: usize, cols: usize, len: usize },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not Hermitian: |h_ij - conj(h_ji)| = {magnitude:e} at ({row}, {col})")]
    NotHermitian { row: usize, col: usize, magnitude: f64 },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("eigensolver failed at theta = {theta}: {source}")]
    SampleFailed {
        theta: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("at least 3 half-planes are required, got {0}")]
    TooFewHalfPlanes(usize),

    #[error("half-plane intersection is unbounded")]
    Unbounded,

    #[error("operation requires a non-empty region")]
    EmptyRegion,

    #[error("arccos argument {0} outside [-1, 1]")]
    ArccosDomain(f64),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
