//! Structure verdicts, method tags, and the per-solve report.

use std::fmt;

use crate::matrix::DenseMatrix;

/// Which triangle of a matrix carries the data.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Triangle {
    Lower,
    Upper,
}

/// Detected structure of a square matrix. Detection runs in this order:
/// banded, lower triangular, upper triangular, likely sympd, general;
/// the first match wins, so a diagonal matrix that is too small to pass the
/// band density limit reports as lower triangular.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructureClass {
    Banded { kl: usize, ku: usize },
    LowerTriangular,
    UpperTriangular,
    LikelySympd,
    General,
}

/// Solve path identifier as reported in [`SolveReport`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    BandedLu,
    TriangularLower,
    TriangularUpper,
    CholeskySympd,
    GeneralLu,
    SvdFallback,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::BandedLu => "banded-lu",
            Method::TriangularLower => "triangular-lower",
            Method::TriangularUpper => "triangular-upper",
            Method::CholeskySympd => "cholesky-sympd",
            Method::GeneralLu => "general-lu",
            Method::SvdFallback => "svd-fallback",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// What the solver did and how trustworthy the answer looks.
#[derive(Clone, Debug, PartialEq)]
pub struct SolveReport {
    /// The path that produced the returned solution.
    pub method_used: Method,
    /// Reciprocal condition estimate from the factorization that was kept,
    /// in `[0, 1]`. Zero when no square factorization contributed (singular
    /// input, non-square input, or a forced SVD route).
    pub rcond: f64,
    /// True exactly when `method_used` is `SvdFallback`.
    pub fallback_taken: bool,
    /// Retained singular-value count; `Some` only on the SVD route.
    pub effective_rank: Option<usize>,
    /// `norm1(A*X - B) / (norm1(A) * norm1(X) + norm1(B))`, computed once on
    /// the returned solution; 0 when the denominator is 0.
    pub relative_residual: f64,
}

/// Solution matrix plus its report.
#[derive(Clone, Debug, PartialEq)]
pub struct SolveOutcome {
    pub x: DenseMatrix,
    pub report: SolveReport,
}
