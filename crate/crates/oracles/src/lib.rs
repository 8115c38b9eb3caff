//! Brute-force reference implementations used as independent test oracles.
//!
//! Everything here works on plain column-major slices and favors the most
//! direct formulation over speed: explicit Gauss-Jordan inversion, full-matrix
//! scans, literal double loops. The production crate must agree with these
//! routines; they share no code with it.
//!
//! An `n_rows x n_cols` matrix stores element `(i, j)` at `a[i + j * n_rows]`.

#![forbid(unsafe_code)]

/// 1-norm (maximum absolute column sum) of a column-major matrix.
pub fn one_norm(n_rows: usize, n_cols: usize, a: &[f64]) -> f64 {
    assert_eq!(a.len(), n_rows * n_cols);
    let mut best = 0.0f64;
    for j in 0..n_cols {
        let sum: f64 = a[j * n_rows..(j + 1) * n_rows].iter().map(|v| v.abs()).sum();
        if sum > best {
            best = sum;
        }
    }
    best
}

/// Dense product of an `m x k` matrix by a `k x n` matrix.
pub fn mat_mul(m: usize, k: usize, n: usize, a: &[f64], b: &[f64]) -> Vec<f64> {
    assert_eq!(a.len(), m * k);
    assert_eq!(b.len(), k * n);
    let mut c = vec![0.0; m * n];
    for j in 0..n {
        for l in 0..k {
            let bb = b[l + j * k];
            if bb != 0.0 {
                for i in 0..m {
                    c[i + j * m] += a[i + l * m] * bb;
                }
            }
        }
    }
    c
}

/// Matrix-vector product of an `m x n` matrix by a length-`n` vector.
pub fn mat_vec(m: usize, n: usize, a: &[f64], x: &[f64]) -> Vec<f64> {
    mat_mul(m, n, 1, a, x)
}

/// Explicit inverse by Gauss-Jordan elimination with partial pivoting.
///
/// Returns `None` when elimination hits an exactly zero pivot column.
pub fn gauss_jordan_inverse(n: usize, a: &[f64]) -> Option<Vec<f64>> {
    assert_eq!(a.len(), n * n);
    // Augmented system [A | I], one row per Vec for clarity.
    let mut aug: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut row = vec![0.0; 2 * n];
            for j in 0..n {
                row[j] = a[i + j * n];
            }
            row[n + i] = 1.0;
            row
        })
        .collect();
    for c in 0..n {
        let mut p = c;
        for r in c + 1..n {
            if aug[r][c].abs() > aug[p][c].abs() {
                p = r;
            }
        }
        if aug[p][c] == 0.0 {
            return None;
        }
        aug.swap(c, p);
        let div = aug[c][c];
        for v in aug[c].iter_mut() {
            *v /= div;
        }
        for r in 0..n {
            if r != c {
                let f = aug[r][c];
                if f != 0.0 {
                    for j in 0..2 * n {
                        aug[r][j] -= f * aug[c][j];
                    }
                }
            }
        }
    }
    let mut inv = vec![0.0; n * n];
    for j in 0..n {
        for i in 0..n {
            inv[i + j * n] = aug[i][n + j];
        }
    }
    Some(inv)
}

/// Exact reciprocal condition number in the 1-norm, via the explicit inverse.
///
/// Returns 0 for singular input, and never exceeds 1.
pub fn exact_rcond(n: usize, a: &[f64]) -> f64 {
    let anorm = one_norm(n, n, a);
    if anorm == 0.0 {
        return 0.0;
    }
    match gauss_jordan_inverse(n, a) {
        Some(inv) => {
            let invnorm = one_norm(n, n, &inv);
            if invnorm == 0.0 {
                0.0
            } else {
                (1.0 / (anorm * invnorm)).min(1.0)
            }
        }
        None => 0.0,
    }
}

/// Solves `A x = b` through the explicit inverse; `None` when singular.
pub fn solve_via_inverse(n: usize, a: &[f64], b: &[f64]) -> Option<Vec<f64>> {
    assert_eq!(b.len(), n);
    let inv = gauss_jordan_inverse(n, a)?;
    Some(mat_vec(n, n, &inv, b))
}

/// Tightest band `(kl, ku)` covering every nonzero, by scanning all elements.
pub fn band_extent(n: usize, a: &[f64]) -> (usize, usize) {
    assert_eq!(a.len(), n * n);
    let (mut kl, mut ku) = (0usize, 0usize);
    for j in 0..n {
        for i in 0..n {
            if a[i + j * n] != 0.0 {
                if i > j {
                    kl = kl.max(i - j);
                } else {
                    ku = ku.max(j - i);
                }
            }
        }
    }
    (kl, ku)
}

/// Number of elements inside the band `(kl, ku)` of an `n x n` matrix.
pub fn band_element_count(n: usize, kl: usize, ku: usize) -> u64 {
    let (n, kl, ku) = (n as u64, kl as u64, ku as u64);
    n * (kl + ku + 1) - kl * (kl + 1) / 2 - ku * (ku + 1) / 2
}

/// True when every element strictly above the main diagonal is exactly zero.
pub fn zero_above_diagonal(n: usize, a: &[f64]) -> bool {
    for j in 0..n {
        for i in 0..j {
            if a[i + j * n] != 0.0 {
                return false;
            }
        }
    }
    true
}

/// True when every element strictly below the main diagonal is exactly zero.
pub fn zero_below_diagonal(n: usize, a: &[f64]) -> bool {
    for j in 0..n {
        for i in j + 1..n {
            if a[i + j * n] != 0.0 {
                return false;
            }
        }
    }
    true
}

/// Reference screen for "symmetric positive definite as far as cheap checks
/// can tell", written as literal double loops that re-read the matrix for
/// every comparison.
///
/// The checks, in order: every diagonal element must be positive (the running
/// maximum `max_diag` is taken over the whole diagonal first); then for every
/// strictly-lower element `a(i,j)` with its mirror `a(j,i)`:
/// near-symmetry (`delta` may exceed `tol` only if it does not also exceed
/// `tol * max(|a(i,j)|, |a(j,i)|)`), `|a(i,j)| < max_diag`, and
/// `|a(i,j)| + |a(j,i)| < a(i,i) + a(j,j)`.
pub fn sympd_screen(n: usize, a: &[f64], tol: f64) -> bool {
    assert_eq!(a.len(), n * n);
    let mut max_diag = 0.0f64;
    for j in 0..n {
        let d = a[j + j * n];
        if d <= 0.0 {
            return false;
        }
        if d > max_diag {
            max_diag = d;
        }
    }
    for j in 0..n {
        for i in j + 1..n {
            let lo = a[i + j * n];
            let up = a[j + i * n];
            let delta = (lo - up).abs();
            if delta > tol && delta > tol * lo.abs().max(up.abs()) {
                return false;
            }
            if lo.abs() >= max_diag {
                return false;
            }
            if lo.abs() + up.abs() >= a[i + i * n] + a[j + j * n] {
                return false;
            }
        }
    }
    true
}

/// Structure verdict produced by [`classify_reference`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RefClass {
    Banded { kl: usize, ku: usize },
    Lower,
    Upper,
    Sympd,
    General,
}

/// Reference classification: banded under the density limit, else lower then
/// upper triangular, else the sympd screen, else general.
pub fn classify_reference(n: usize, a: &[f64], density_limit: f64, sympd_tol: f64) -> RefClass {
    let (kl, ku) = band_extent(n, a);
    let count = band_element_count(n, kl, ku) as f64;
    if count <= density_limit * (n * n) as f64 {
        return RefClass::Banded { kl, ku };
    }
    if zero_above_diagonal(n, a) {
        return RefClass::Lower;
    }
    if zero_below_diagonal(n, a) {
        return RefClass::Upper;
    }
    if sympd_screen(n, a, sympd_tol) {
        return RefClass::Sympd;
    }
    RefClass::General
}
