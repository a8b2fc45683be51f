//! Error type shared by all modules.

use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("empty input")]
    EmptyInput,

    #[error("zero vector")]
    ZeroVector,

    /// `|y*x|` is too small relative to `||x|| ||y||` for a two-sided
    /// quotient to be meaningful.
    #[error("degenerate pair: |y*x| <= {threshold:.3e}")]
    DegeneratePair { threshold: f64 },

    #[error("basis is numerically singular: condition estimate {cond:.3e} exceeds limit {limit:.3e}")]
    SingularBasis { cond: f64, limit: f64 },

    /// The eigenvector basis is so ill conditioned that the matrix must be
    /// treated as defective in floating point.
    #[error("matrix is numerically defective: eigenbasis condition {cond:.3e} exceeds limit {limit:.3e}")]
    DefectiveMatrix { cond: f64, limit: f64 },

    #[error("solver failure: {0}")]
    NonConvergence(String),

    #[error("matrix is not Hermitian: relative deviation {deviation:.3e}")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("invalid M matrix: {0}")]
    InvalidM(String),

    #[error("spectrum is not real: max |Im| = {max_imag:.3e}")]
    ComplexSpectrum { max_imag: f64 },

    #[error("basis is rank deficient")]
    RankDeficientBasis,

    #[error("sandwich bound violated at sample {index}: {value} outside [{lo:.6e}, {hi:.6e}]")]
    SandwichViolation {
        index: usize,
        value: Complex64,
        lo: f64,
        hi: f64,
    },

    #[error("input must be real: {0}")]
    NotRealInput(String),

    /// Two algebraically equal computation routes disagreed beyond
    /// tolerance; signals a conditioning breakdown.
    #[error("consistency check failed ({context}): measured {measured:.3e} exceeds {tolerance:.3e}")]
    Inconsistent {
        context: &'static str,
        measured: f64,
        tolerance: f64,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Wraps a backend (LAPACK) failure.
    pub(crate) fn backend(context: &str, e: impl std::fmt::Display) -> Self {
        Error::NonConvergence(format!("{context}: {e}"))
    }
}
