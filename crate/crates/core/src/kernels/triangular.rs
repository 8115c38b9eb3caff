//! Direct substitution solves on triangular matrices.
//!
//! Nothing is factored here: the matrix is used in place, and only the stated
//! triangle (plus the diagonal) is ever referenced, so callers may pass a
//! full matrix and have its other triangle ignored.

use crate::error::KernelError;
use crate::kernels::condest::rcond_from_factor;
use crate::matrix::{abs_sum, dot, DenseMatrix};
use crate::report::Triangle;

fn check_diagonal(a: &DenseMatrix) -> Result<(), KernelError> {
    for j in 0..a.n_rows() {
        if a[(j, j)] == 0.0 {
            return Err(KernelError::Singular { column: j });
        }
    }
    Ok(())
}

/// Overwrites `x` with the solution of the triangular system (or its
/// transpose). The diagonal must be free of exact zeros.
pub(crate) fn tri_solve_vec(a: &DenseMatrix, side: Triangle, transpose: bool, x: &mut [f64]) {
    let n = a.n_rows();
    assert_eq!(x.len(), n);
    match (side, transpose) {
        (Triangle::Lower, false) => {
            // Forward substitution, column-oriented.
            for j in 0..n {
                let col = a.column(j);
                x[j] /= col[j];
                let xj = x[j];
                if xj != 0.0 {
                    for (v, &l) in x[j + 1..].iter_mut().zip(&col[j + 1..]) {
                        *v -= l * xj;
                    }
                }
            }
        }
        (Triangle::Upper, false) => {
            // Back substitution, column-oriented.
            for j in (0..n).rev() {
                let col = a.column(j);
                x[j] /= col[j];
                let xj = x[j];
                if xj != 0.0 {
                    for (v, &u) in x[..j].iter_mut().zip(&col[..j]) {
                        *v -= u * xj;
                    }
                }
            }
        }
        (Triangle::Lower, true) => {
            // L^T is upper triangular; each step dots column j of L below
            // the diagonal with the already-solved tail.
            for j in (0..n).rev() {
                let col = a.column(j);
                x[j] = (x[j] - dot(&col[j + 1..], &x[j + 1..])) / col[j];
            }
        }
        (Triangle::Upper, true) => {
            for j in 0..n {
                let col = a.column(j);
                x[j] = (x[j] - dot(&col[..j], &x[..j])) / col[j];
            }
        }
    }
}

/// Solves `A * X = B` by substitution on the stated triangle of a square
/// matrix. Fails up front if any diagonal element is exactly zero, naming
/// its 0-based column.
pub fn tri_solve(a: &DenseMatrix, b: &DenseMatrix, side: Triangle) -> Result<DenseMatrix, KernelError> {
    assert!(a.is_square(), "triangular solve requires a square matrix");
    assert_eq!(b.n_rows(), a.n_rows(), "right-hand side row count mismatch");
    check_diagonal(a)?;
    let mut x = b.clone();
    for j in 0..x.n_cols() {
        tri_solve_vec(a, side, false, x.column_mut(j));
    }
    Ok(x)
}

/// Reciprocal 1-norm condition estimate of the triangular operator, in
/// `[0, 1]`; 0 when the diagonal has an exact zero. Only the stated triangle
/// enters the norm.
pub fn tri_rcond(a: &DenseMatrix, side: Triangle) -> f64 {
    assert!(a.is_square(), "triangular solve requires a square matrix");
    if check_diagonal(a).is_err() {
        return 0.0;
    }
    let n = a.n_rows();
    let mut anorm = 0.0f64;
    for j in 0..n {
        let col = a.column(j);
        let range = match side {
            Triangle::Lower => &col[j..],
            Triangle::Upper => &col[..j + 1],
        };
        let sum = abs_sum(range);
        if sum > anorm {
            anorm = sum;
        }
    }
    rcond_from_factor(anorm, n, |x, t| tri_solve_vec(a, side, t, x))
}
