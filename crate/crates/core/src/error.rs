//! Error type shared across the crate.

use thiserror::Error;

#[derive(Error, Debug)]
pub enum CoreError {
    #[error("degenerate domain: {0}")]
    DegenerateDomain(String),

    #[error("assembly error: {0}")]
    Assembly(String),

    #[error("ellipticity violation at cell {cell}: smallest tensor eigenvalue {alpha_min}")]
    Ellipticity { cell: usize, alpha_min: f64 },

    #[error("mask mismatch: {0}")]
    MaskMismatch(String),

    #[error("linear solver failure: {0}")]
    Solver(String),

    #[error("eigensolver did not converge after {iterations} iterations (last residual {residual:e})")]
    EigenNoConvergence { iterations: usize, residual: f64 },

    #[error("operator refused: {0}")]
    Refused(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search did not converge: {0}")]
    SearchFailure(String),

    #[error("monotonicity violated during fixed-point iteration: {0}")]
    MonotonicityViolation(String),

    #[error("uniqueness check failed: from-above and from-below limits differ by {gap:e}")]
    UniquenessFailure { gap: f64 },

    #[error("dense cap exceeded: n = {n} > cap {cap}")]
    DenseCap { n: usize, cap: usize },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, CoreError>;
