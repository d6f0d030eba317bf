//! Error type shared by all modules.

use thiserror::Error;

/// Errors produced by state builders, matrix kernels and correlation measures.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument was outside its documented domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Operand dimensions are incompatible.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A matrix required to be Hermitian was not, within tolerance.
    #[error("matrix is not Hermitian: defect {defect:.3e} exceeds {tol:.3e}")]
    NotHermitian { defect: f64, tol: f64 },

    /// A matrix failed the density-matrix invariants.
    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    /// The Jacobi eigensolver failed to reach its off-diagonal target.
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off:.3e})")]
    NoConvergence { sweeps: usize, off: f64 },

    /// A numerical consistency check failed at runtime.
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
