//! Top-level solve entry points: detection, dispatch, conditioning gate,
//! and SVD fallback.

use crate::config::SolverConfig;
use crate::detect::classify;
use crate::error::{KernelError, SolveError};
use crate::kernels::lsq_min_norm;
use crate::matrix::{norm1, DenseMatrix};
use crate::report::{Method, SolveOutcome, SolveReport};
use crate::strategy::{forced_strategy, strategy_for, GeneralLuStrategy, SolveStrategy};

/// Solves `A * X = B`, adapting to the structure of `A`.
///
/// Square systems are classified (banded, triangular, likely sympd, general)
/// and dispatched to the matching kernel; the kernel's reciprocal condition
/// estimate is then gated against `config.rcond_threshold`, and poorly
/// conditioned or singular systems are re-solved by the SVD minimum-norm
/// route (or rejected when fallback is disabled). Non-square systems go
/// straight to the least-squares route. `config.force_method` bypasses
/// detection but not the gate.
///
/// ```
/// use axb::{solve, DenseMatrix, Method, SolverConfig};
///
/// let a = DenseMatrix::from_rows(2, 2, &[4.0, 1.0, 1.0, 3.0]);
/// let b = DenseMatrix::from_column_major(2, 1, vec![6.0, 5.0]);
/// let out = solve(&a, &b, &SolverConfig::default()).unwrap();
/// assert_eq!(out.report.method_used, Method::CholeskySympd);
/// assert!((out.x[(0, 0)] - 13.0 / 11.0).abs() < 1e-14);
/// ```
pub fn solve(a: &DenseMatrix, b: &DenseMatrix, config: &SolverConfig) -> Result<SolveOutcome, SolveError> {
    validate(a, b, config)?;
    if !a.is_square() {
        return svd_route(a, b, config);
    }
    if let Some(method) = config.force_method {
        return match forced_strategy(method, a) {
            Some(strategy) => run_strategy(a, b, config, strategy.as_ref()),
            None => svd_route(a, b, config),
        };
    }
    let class = classify(a, config);
    run_strategy(a, b, config, strategy_for(class).as_ref())
}

/// Solves a square system by partial-pivoting LU regardless of structure,
/// with the same conditioning gate and fallback as [`solve`]. This is the
/// baseline the adaptive path is measured against.
pub fn solve_general(
    a: &DenseMatrix,
    b: &DenseMatrix,
    config: &SolverConfig,
) -> Result<SolveOutcome, SolveError> {
    validate(a, b, config)?;
    if !a.is_square() {
        return Err(SolveError::Validation(
            "the general LU solver requires a square matrix".into(),
        ));
    }
    run_strategy(a, b, config, &GeneralLuStrategy)
}

fn validate(a: &DenseMatrix, b: &DenseMatrix, config: &SolverConfig) -> Result<(), SolveError> {
    config.validate()?;
    if a.is_empty() {
        return Err(SolveError::Validation("matrix A is empty".into()));
    }
    if b.is_empty() {
        return Err(SolveError::Validation("right-hand side B is empty".into()));
    }
    if b.n_rows() != a.n_rows() {
        return Err(SolveError::Validation(format!(
            "B has {} rows but A has {}",
            b.n_rows(),
            a.n_rows()
        )));
    }
    if !a.all_finite() {
        return Err(SolveError::Validation("matrix A contains non-finite values".into()));
    }
    if !b.all_finite() {
        return Err(SolveError::Validation("right-hand side B contains non-finite values".into()));
    }
    Ok(())
}

fn run_strategy(
    a: &DenseMatrix,
    b: &DenseMatrix,
    config: &SolverConfig,
    strategy: &dyn SolveStrategy,
) -> Result<SolveOutcome, SolveError> {
    match strategy.attempt(a, b) {
        Ok(sol) => {
            if sol.rcond < config.rcond_threshold {
                // Poorly conditioned: the answer exists but is not trusted.
                // The report keeps the estimate that triggered the fallback.
                fallback(a, b, config, sol.rcond)
            } else {
                Ok(finish(a, b, sol.x, strategy.method(), sol.rcond, None))
            }
        }
        // An indefinite matrix slipped past the sympd screen (or a forced
        // Cholesky): retry on the general path.
        Err(KernelError::NotPositiveDefinite { .. }) => {
            run_strategy(a, b, config, &GeneralLuStrategy)
        }
        Err(KernelError::Singular { .. }) => fallback(a, b, config, 0.0),
        Err(KernelError::Convergence) => Err(SolveError::Convergence),
    }
}

/// Gate-triggered or singular-input fallback; honors `allow_fallback`.
fn fallback(
    a: &DenseMatrix,
    b: &DenseMatrix,
    config: &SolverConfig,
    rcond: f64,
) -> Result<SolveOutcome, SolveError> {
    if !config.allow_fallback {
        return Err(SolveError::PoorlyConditioned { rcond });
    }
    let (x, rank) =
        lsq_min_norm(a, b, config.lsq_cutoff_ratio).map_err(|_| SolveError::Convergence)?;
    Ok(finish(a, b, x, Method::SvdFallback, rcond, Some(rank)))
}

/// Unconditional SVD route for non-square systems and the forced SVD method;
/// there is no square factorization, so the reported rcond is 0.
fn svd_route(a: &DenseMatrix, b: &DenseMatrix, config: &SolverConfig) -> Result<SolveOutcome, SolveError> {
    let (x, rank) =
        lsq_min_norm(a, b, config.lsq_cutoff_ratio).map_err(|_| SolveError::Convergence)?;
    Ok(finish(a, b, x, Method::SvdFallback, 0.0, Some(rank)))
}

fn finish(
    a: &DenseMatrix,
    b: &DenseMatrix,
    x: DenseMatrix,
    method: Method,
    rcond: f64,
    effective_rank: Option<usize>,
) -> SolveOutcome {
    let relative_residual = relative_residual(a, b, &x);
    SolveOutcome {
        x,
        report: SolveReport {
            method_used: method,
            rcond,
            fallback_taken: method == Method::SvdFallback,
            effective_rank,
            relative_residual,
        },
    }
}

/// `norm1(A*X - B) / (norm1(A) * norm1(X) + norm1(B))`; 0 when the
/// denominator is 0.
pub(crate) fn relative_residual(a: &DenseMatrix, b: &DenseMatrix, x: &DenseMatrix) -> f64 {
    let mut r = a.matmul(x);
    for (rv, bv) in r.data_mut().iter_mut().zip(b.data()) {
        *rv -= bv;
    }
    let denom = norm1(a) * norm1(x) + norm1(b);
    if denom == 0.0 {
        0.0
    } else {
        norm1(&r) / denom
    }
}
