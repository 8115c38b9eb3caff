//! Error types for the factorization kernels and the top-level solver.

use std::error::Error;
use std::fmt;

/// Failure raised by a factorization or substitution kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelError {
    /// An exactly zero pivot at the given column (0-based); the matrix is
    /// singular as far as the factorization can tell.
    Singular { column: usize },
    /// A Cholesky pivot was zero or negative at the given column (0-based);
    /// the matrix is not positive definite.
    NotPositiveDefinite { column: usize },
    /// The SVD did not converge within its sweep limit.
    Convergence,
}

impl fmt::Display for KernelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelError::Singular { column } => {
                write!(f, "singular matrix: zero pivot at column {column}")
            }
            KernelError::NotPositiveDefinite { column } => {
                write!(f, "matrix is not positive definite: non-positive pivot at column {column}")
            }
            KernelError::Convergence => write!(f, "SVD sweep limit exceeded"),
        }
    }
}

impl Error for KernelError {}

/// Failure surfaced by the top-level solve entry points.
#[derive(Clone, Debug, PartialEq)]
pub enum SolveError {
    /// The inputs or configuration are unusable (non-finite values, dimension
    /// mismatch, empty operands, out-of-range settings).
    Validation(String),
    /// The factorization succeeded but the conditioning estimate fell below
    /// the configured threshold and the SVD fallback is disabled.
    PoorlyConditioned { rcond: f64 },
    /// The SVD fallback itself failed to converge.
    Convergence,
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::Validation(reason) => write!(f, "invalid input: {reason}"),
            SolveError::PoorlyConditioned { rcond } => {
                write!(f, "system is poorly conditioned (rcond = {rcond:e}) and fallback is disabled")
            }
            SolveError::Convergence => write!(f, "SVD fallback did not converge"),
        }
    }
}

impl Error for SolveError {}
