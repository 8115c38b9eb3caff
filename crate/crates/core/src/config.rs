//! Solver configuration knobs and the forced-method override.

use crate::error::SolveError;
use crate::matrix::machine_epsilon;

/// Method override: bypasses structure detection and runs the named path.
///
/// The conditioning gate still applies, so a forced path can still hand off
/// to the SVD fallback. Forcing `Cholesky` on an indefinite matrix falls
/// through to `GeneralLu`, same as the detected path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ForcedMethod {
    /// Pack the whole matrix into band storage (a full-density scan finds the
    /// tightest band) and run the banded factorization.
    Banded,
    /// Forward substitution on the lower triangle.
    TriangularLower,
    /// Back substitution on the upper triangle.
    TriangularUpper,
    /// Cholesky on the lower triangle.
    Cholesky,
    /// Partial-pivoting LU, the same path `solve_general` always takes.
    GeneralLu,
    /// Straight to the SVD least-squares route.
    Svd,
}

/// Tunable limits for the adaptive solver. `Default` gives the values the
/// rest of the crate is calibrated against.
#[derive(Clone, Debug)]
pub struct SolverConfig {
    /// A matrix is treated as banded only when the element count of its
    /// tightest band is at most this fraction of `n * n`.
    pub band_density_limit: f64,
    /// The symmetry tolerance used by the sympd screen is this multiple of
    /// machine epsilon.
    pub sympd_tol_multiplier: f64,
    /// Solutions whose reciprocal condition estimate falls below this value
    /// are handed to the SVD fallback (or rejected when fallback is off).
    pub rcond_threshold: f64,
    /// Allows the SVD least-squares fallback for poorly conditioned or
    /// singular square systems. When false such systems fail with
    /// `PoorlyConditioned`.
    pub allow_fallback: bool,
    /// Singular values at or below this fraction of the largest one are
    /// treated as zero by the least-squares route.
    pub lsq_cutoff_ratio: f64,
    /// When set, skip detection and use this method.
    pub force_method: Option<ForcedMethod>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            band_density_limit: 0.25,
            sympd_tol_multiplier: 100.0,
            rcond_threshold: 0.5 * machine_epsilon(),
            allow_fallback: true,
            lsq_cutoff_ratio: machine_epsilon(),
            force_method: None,
        }
    }
}

impl SolverConfig {
    /// Rejects settings outside their documented ranges.
    pub fn validate(&self) -> Result<(), SolveError> {
        fn check(ok: bool, what: &str) -> Result<(), SolveError> {
            if ok {
                Ok(())
            } else {
                Err(SolveError::Validation(format!("configuration: {what}")))
            }
        }
        check(
            self.band_density_limit.is_finite()
                && self.band_density_limit > 0.0
                && self.band_density_limit <= 1.0,
            "band_density_limit must be in (0, 1]",
        )?;
        check(
            self.sympd_tol_multiplier.is_finite() && self.sympd_tol_multiplier > 0.0,
            "sympd_tol_multiplier must be positive",
        )?;
        check(
            self.rcond_threshold.is_finite() && self.rcond_threshold >= 0.0,
            "rcond_threshold must be non-negative",
        )?;
        check(
            self.lsq_cutoff_ratio.is_finite() && self.lsq_cutoff_ratio >= 0.0,
            "lsq_cutoff_ratio must be non-negative",
        )?;
        Ok(())
    }
}
