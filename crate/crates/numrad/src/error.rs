//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (asymmetry {asymmetry:.3e} exceeds tolerance {tol:.3e})")]
    NotHermitian { asymmetry: f64, tol: f64 },

    #[error("eigenvalue {eigenvalue:.6e} below the negative-rounding band of a PSD operand")]
    NegativeSpectrum { eigenvalue: f64 },

    #[error("expected a {expected} matrix, got {rows}x{cols}")]
    WrongDimension {
        expected: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("operand is not positive semidefinite (min eigenvalue {min_eigenvalue:.6e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("vector is not unit length (norm {norm:.12})")]
    NotUnit { norm: f64 },

    #[error("invalid factor pair: alpha = {alpha} outside [0, 1]")]
    InvalidPair { alpha: f64 },

    #[error("negative input {value} where a value in [0, inf) is required")]
    NegativeInput { value: f64 },

    #[error("{what} = {value} out of range")]
    OutOfRange { what: &'static str, value: f64 },

    #[error("unknown bound id `{name}`")]
    UnknownBound { name: String },

    #[error("bound {bound} requires parameter `{param}`")]
    MissingParam { bound: &'static str, param: &'static str },

    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: String },

    #[error("ensemble dimension {dim} outside [1, 32]")]
    DimOutOfRange { dim: usize },

    #[error("parse error: {message}")]
    Parse { message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
