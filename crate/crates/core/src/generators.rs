//! Deterministic random test-matrix generators, one per structure class.
//!
//! Each generator draws entries column by column from the caller's RNG, so a
//! given seed always reproduces the same matrix. Diagonals are shifted upward
//! to keep every generated system comfortably invertible: solving one should
//! exercise the intended fast path, never the ill-conditioning fallback.

use rand::Rng;

use crate::matrix::DenseMatrix;

/// One uniform draw centered on zero: `[-0.5, 0.5)`.
fn centered<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.gen::<f64>() - 0.5
}

/// Symmetric positive definite: `A = RᵀR + I` with `R` uniform in
/// `[-0.5, 0.5)`. The Gram product makes `A` symmetric positive
/// semi-definite and the identity shift pushes every eigenvalue to 1 or
/// above, so the result is always comfortably positive definite.
pub fn gen_sympd<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DenseMatrix {
    assert!(n >= 1, "matrix order must be at least 1");
    let r = DenseMatrix::from_fn(n, n, |_, _| centered(rng));
    let mut a = DenseMatrix::zeros(n, n);
    for j in 0..n {
        for i in j..n {
            // A_ij = column i of R dotted with column j of R; mirroring the
            // same accumulated value keeps the two halves bit-identical.
            let dot: f64 = r.column(i).iter().zip(r.column(j)).map(|(x, y)| x * y).sum();
            a[(i, j)] = dot;
            a[(j, i)] = dot;
        }
        a[(j, j)] += 1.0;
    }
    a
}

/// Banded with the given odd number of nonzero diagonals, centered on the
/// main diagonal (`kl = ku = (diagonals-1)/2`). Off-band entries are exactly
/// zero; the main diagonal is shifted by the bandwidth to force strict
/// diagonal dominance.
pub fn gen_banded<R: Rng + ?Sized>(n: usize, diagonals: usize, rng: &mut R) -> DenseMatrix {
    assert!(n >= 1, "matrix order must be at least 1");
    assert!(
        diagonals % 2 == 1 && diagonals >= 1 && diagonals <= 2 * n - 1,
        "diagonal count must be odd and between 1 and 2n-1"
    );
    let half = (diagonals - 1) / 2;
    let shift = (2 * half + 1) as f64;
    let mut a = DenseMatrix::zeros(n, n);
    for j in 0..n {
        let lo = j.saturating_sub(half);
        let hi = (j + half).min(n - 1);
        for i in lo..=hi {
            a[(i, j)] = centered(rng);
        }
        a[(j, j)] += shift;
    }
    a
}

/// Lower triangular: strict upper triangle exactly zero, lower entries
/// uniform in `[-0.5, 0.5)`, diagonal shifted by +1 for invertibility.
pub fn gen_lower_tri<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DenseMatrix {
    assert!(n >= 1, "matrix order must be at least 1");
    let mut a = DenseMatrix::zeros(n, n);
    for j in 0..n {
        for i in j..n {
            a[(i, j)] = centered(rng);
        }
        a[(j, j)] += 1.0;
    }
    a
}

/// Fully dense with no special structure: every entry uniform in
/// `[-0.5, 0.5)`, diagonal shifted by +n/2 so the matrix stays
/// diagonally dominant (hence well conditioned) at every order.
pub fn gen_dense<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DenseMatrix {
    assert!(n >= 2, "unstructured matrices start at order 2");
    let shift = n as f64 / 2.0;
    let mut a = DenseMatrix::from_fn(n, n, |_, _| centered(rng));
    for j in 0..n {
        a[(j, j)] += shift;
    }
    a
}
