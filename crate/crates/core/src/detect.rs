//! Structure detection for square matrices.
//!
//! Three detectors run in a fixed order: banded, triangular (lower before
//! upper), then a cheap screen for symmetric positive definite matrices.
//! Each detector only reads elements; none of them modifies or copies the
//! matrix, and each is built to bail out as early as possible so that the
//! combined cost on an unstructured matrix stays far below one pass over
//! the data.

use crate::config::SolverConfig;
use crate::matrix::{machine_epsilon, DenseMatrix};
use crate::report::{StructureClass, Triangle};

/// Tightest band that contains every nonzero of a square matrix:
/// `kl` subdiagonals and `ku` superdiagonals, both at most `n - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BandExtent {
    pub kl: usize,
    pub ku: usize,
}

/// Number of elements inside the band `(kl, ku)` of an `n x n` matrix:
/// `n*(kl + ku + 1)` shortened by the triangular cut of each diagonal.
pub fn band_element_count(n: usize, kl: usize, ku: usize) -> u64 {
    let (n, kl, ku) = (n as u64, kl as u64, ku as u64);
    n * (kl + ku + 1) - kl * (kl + 1) / 2 - ku * (ku + 1) / 2
}

/// Element access used by the detectors, generic so tests can count reads.
trait Elements {
    fn order(&self) -> usize;
    fn at(&self, i: usize, j: usize) -> f64;
}

impl Elements for DenseMatrix {
    fn order(&self) -> usize {
        debug_assert!(self.is_square());
        self.n_rows()
    }

    fn at(&self, i: usize, j: usize) -> f64 {
        self[(i, j)]
    }
}

fn detect_banded_in<M: Elements>(a: &M, density_limit: f64) -> Option<BandExtent> {
    let n = a.order();
    let limit = density_limit * (n * n) as f64;
    let mut kl = 0usize;
    let mut ku = 0usize;
    for j in 0..n {
        // First nonzero from the top of the column fixes how far this column
        // reaches above the diagonal; the last nonzero below the diagonal is
        // found by scanning upward from the bottom.
        for i in 0..j {
            if a.at(i, j) != 0.0 {
                ku = ku.max(j - i);
                break;
            }
        }
        for i in (j + 1..n).rev() {
            if a.at(i, j) != 0.0 {
                kl = kl.max(i - j);
                break;
            }
        }
        // The extents only grow, so the verdict is final as soon as the band
        // is too dense.
        if band_element_count(n, kl, ku) as f64 > limit {
            return None;
        }
    }
    Some(BandExtent { kl, ku })
}

fn detect_triangular_in<M: Elements>(a: &M) -> Option<Triangle> {
    let n = a.order();
    let mut lower = true;
    'above: for j in 1..n {
        for i in 0..j {
            if a.at(i, j) != 0.0 {
                lower = false;
                break 'above;
            }
        }
    }
    if lower {
        return Some(Triangle::Lower);
    }
    let mut upper = true;
    'below: for j in 0..n {
        for i in j + 1..n {
            if a.at(i, j) != 0.0 {
                upper = false;
                break 'below;
            }
        }
    }
    if upper {
        return Some(Triangle::Upper);
    }
    None
}

fn likely_sympd_in<M: Elements>(a: &M, tol_multiplier: f64) -> bool {
    let n = a.order();
    let tol = tol_multiplier * machine_epsilon();
    // Pass 1: the whole diagonal must be positive. Cache it so pass 2 never
    // re-reads a diagonal element.
    let mut diag = vec![0.0f64; n];
    let mut max_diag = 0.0f64;
    for (j, d) in diag.iter_mut().enumerate() {
        let v = a.at(j, j);
        if v <= 0.0 {
            return false;
        }
        if v > max_diag {
            max_diag = v;
        }
        *d = v;
    }
    // Pass 2: each strictly-lower element against its mirror. The magnitude
    // checks use the lower element, matching the column-by-column walk.
    for j in 0..n {
        for i in j + 1..n {
            let lo = a.at(i, j);
            let up = a.at(j, i);
            let delta = (lo - up).abs();
            if delta > tol && delta > tol * lo.abs().max(up.abs()) {
                return false;
            }
            if lo.abs() >= max_diag {
                return false;
            }
            if lo.abs() + up.abs() >= diag[i] + diag[j] {
                return false;
            }
        }
    }
    true
}

/// Finds the tightest band and accepts it if its element count is at most
/// `density_limit * n * n`. Aborts (and returns `None`) as soon as the
/// running extents are already too dense, so unstructured matrices cost only
/// a handful of element reads.
///
/// The matrix must be square.
pub fn detect_banded(a: &DenseMatrix, density_limit: f64) -> Option<BandExtent> {
    assert!(a.is_square(), "band detection requires a square matrix");
    detect_banded_in(a, density_limit)
}

/// Reports whether one triangle is exactly zero. The strictly-upper scan
/// runs first, so a diagonal matrix reports `Lower`.
///
/// The matrix must be square.
pub fn detect_triangular(a: &DenseMatrix) -> Option<Triangle> {
    assert!(a.is_square(), "triangle detection requires a square matrix");
    detect_triangular_in(a)
}

/// Cheap two-pass screen for symmetric positive definite matrices: positive
/// diagonal, near-symmetry within `tol_multiplier * epsilon`, no off-diagonal
/// element reaching the diagonal maximum, and every mirror pair summing below
/// its two diagonal entries. A `true` here is a hint, not a proof; the
/// Cholesky factorization is the final arbiter.
///
/// The matrix must be square. Reads at most `n*n + n` elements.
pub fn likely_sympd(a: &DenseMatrix, tol_multiplier: f64) -> bool {
    assert!(a.is_square(), "sympd screen requires a square matrix");
    likely_sympd_in(a, tol_multiplier)
}

/// Runs the detectors in order (banded, triangular, sympd screen) with the
/// limits from `config` and returns the first match.
///
/// The matrix must be square.
pub fn classify(a: &DenseMatrix, config: &SolverConfig) -> StructureClass {
    assert!(a.is_square(), "classification requires a square matrix");
    if let Some(extent) = detect_banded_in(a, config.band_density_limit) {
        return StructureClass::Banded { kl: extent.kl, ku: extent.ku };
    }
    match detect_triangular_in(a) {
        Some(Triangle::Lower) => return StructureClass::LowerTriangular,
        Some(Triangle::Upper) => return StructureClass::UpperTriangular,
        None => {}
    }
    if likely_sympd_in(a, config.sympd_tol_multiplier) {
        return StructureClass::LikelySympd;
    }
    StructureClass::General
}
