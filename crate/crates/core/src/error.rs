use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("grid mismatch: {left} vs {right} samples")]
    GridMismatch { left: usize, right: usize },

    #[error("invalid grid size {0}: must be a positive multiple of 4")]
    InvalidGrid(usize),

    #[error("degenerate shape: {0}")]
    Degenerate(String),

    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),

    #[error("samples are not an even function: {0}")]
    NotEven(String),

    /// `A(h) <= 0`: segments and other zero-area bodies cannot be normalized.
    #[error("isotropic or negative vector (A = {0:e})")]
    NonPositiveArea(f64),

    #[error("not a support function: min(h'' + h) = {0:e}")]
    NotSupportFunction(f64),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("iteration did not converge: {0}")]
    NoConvergence(String),

    #[error("spectral tail holds {fraction:.3e} of the energy (strict mode)")]
    SpectralTail { fraction: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
