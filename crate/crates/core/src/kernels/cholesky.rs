//! Cholesky factorization for symmetric positive definite matrices.
//!
//! Only the lower triangle of the input is read, mirroring the convention of
//! the detection screen that feeds this path: the matrix is taken to be
//! `L * L^T` of whatever its lower triangle says.

use crate::error::KernelError;
use crate::kernels::condest::rcond_from_factor;
use crate::kernels::triangular::tri_solve_vec;
use crate::matrix::DenseMatrix;
use crate::report::Triangle;

/// Lower Cholesky factor `A = L * L^T` with a strictly positive diagonal,
/// plus the 1-norm of the (symmetrized) input.
#[derive(Clone, Debug)]
pub struct CholFactor {
    l: DenseMatrix,
    anorm: f64,
}

impl CholFactor {
    pub fn lower(&self) -> &DenseMatrix {
        &self.l
    }

    pub fn order(&self) -> usize {
        self.l.n_rows()
    }

    pub fn anorm(&self) -> f64 {
        self.anorm
    }
}

/// 1-norm of the symmetric matrix described by the lower triangle.
fn sym_norm1_lower(a: &DenseMatrix) -> f64 {
    let n = a.n_rows();
    let mut best = 0.0f64;
    for j in 0..n {
        let mut sum = 0.0;
        for i in 0..j {
            sum += a[(j, i)].abs();
        }
        for i in j..n {
            sum += a[(i, j)].abs();
        }
        if sum > best {
            best = sum;
        }
    }
    best
}

/// Factors a symmetric positive definite matrix as `A = L * L^T`, reading
/// only the lower triangle. Fails with the 0-based column of the first
/// non-positive pivot when the matrix is not positive definite.
pub fn cholesky_factor(a: &DenseMatrix) -> Result<CholFactor, KernelError> {
    assert!(a.is_square(), "Cholesky requires a square matrix");
    assert!(!a.is_empty(), "Cholesky requires a non-empty matrix");
    let n = a.n_rows();
    let anorm = sym_norm1_lower(a);
    let mut l = DenseMatrix::zeros(n, n);
    for j in 0..n {
        for i in j..n {
            l[(i, j)] = a[(i, j)];
        }
    }
    let data = l.data_mut();
    for j in 0..n {
        let d = data[j * n + j];
        if d <= 0.0 {
            return Err(KernelError::NotPositiveDefinite { column: j });
        }
        let r = d.sqrt();
        data[j * n + j] = r;
        for v in data[j * n + j + 1..(j + 1) * n].iter_mut() {
            *v /= r;
        }
        // Trailing update: column c loses the outer product of column j.
        for c in j + 1..n {
            let (left, right) = data.split_at_mut(c * n);
            let col_j = &left[j * n..(j + 1) * n];
            let l_cj = col_j[c];
            if l_cj != 0.0 {
                for (v, &l_ij) in right[c..n].iter_mut().zip(&col_j[c..n]) {
                    *v -= l_ij * l_cj;
                }
            }
        }
    }
    Ok(CholFactor { l, anorm })
}

/// Overwrites `x` with `inv(A) * x` via a forward and a back substitution.
pub(crate) fn cholesky_solve_vec(f: &CholFactor, x: &mut [f64]) {
    tri_solve_vec(&f.l, Triangle::Lower, false, x);
    tri_solve_vec(&f.l, Triangle::Lower, true, x);
}

/// Solves `A * X = B` for every column of `B` using the Cholesky factor.
pub fn cholesky_solve(f: &CholFactor, b: &DenseMatrix) -> DenseMatrix {
    assert_eq!(b.n_rows(), f.order(), "right-hand side row count mismatch");
    let mut x = b.clone();
    for j in 0..x.n_cols() {
        cholesky_solve_vec(f, x.column_mut(j));
    }
    x
}

/// Reciprocal 1-norm condition estimate from the factor, in `[0, 1]`.
pub fn cholesky_rcond(f: &CholFactor) -> f64 {
    // The operator is symmetric, so the transpose probe is the same solve.
    rcond_from_factor(f.anorm, f.order(), |x, _t| cholesky_solve_vec(f, x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_of_small_spd_matrix() {
        let a = DenseMatrix::from_rows(2, 2, &[4.0, 2.0, 2.0, 5.0]);
        let f = cholesky_factor(&a).unwrap();
        let l = f.lower();
        assert_eq!(l[(0, 0)], 2.0);
        assert_eq!(l[(1, 0)], 1.0);
        assert_eq!(l[(1, 1)], 2.0);
        assert_eq!(l[(0, 1)], 0.0);
    }

    #[test]
    fn solve_through_both_substitutions() {
        let a = DenseMatrix::from_rows(2, 2, &[4.0, 2.0, 2.0, 5.0]);
        let f = cholesky_factor(&a).unwrap();
        let b = DenseMatrix::from_column_major(2, 1, vec![8.0, 9.0]);
        let x = cholesky_solve(&f, &b);
        assert!((x[(0, 0)] - 1.375).abs() < 1e-14);
        assert!((x[(1, 0)] - 1.25).abs() < 1e-14);
    }

    #[test]
    fn indefinite_matrix_reports_failing_column() {
        let a = DenseMatrix::from_rows(2, 2, &[1.0, 2.0, 2.0, 1.0]);
        assert_eq!(
            cholesky_factor(&a).err(),
            Some(KernelError::NotPositiveDefinite { column: 1 })
        );
        let neg = DenseMatrix::from_rows(1, 1, &[-4.0]);
        assert_eq!(
            cholesky_factor(&neg).err(),
            Some(KernelError::NotPositiveDefinite { column: 0 })
        );
    }

    #[test]
    fn upper_triangle_is_never_read() {
        let mut a = DenseMatrix::from_rows(2, 2, &[4.0, 0.0, 2.0, 5.0]);
        a[(0, 1)] = f64::NAN;
        let f = cholesky_factor(&a).unwrap();
        assert!(f.lower().all_finite());
        assert!(f.anorm().is_finite());
    }

    #[test]
    fn reconstruction_and_positive_diagonal() {
        let n = 4;
        // Diagonally dominant symmetric matrix.
        let a = DenseMatrix::from_fn(n, n, |i, j| {
            if i == j {
                6.0
            } else {
                1.0 / (1.0 + i.abs_diff(j) as f64)
            }
        });
        let f = cholesky_factor(&a).unwrap();
        let l = f.lower();
        for j in 0..n {
            assert!(l[(j, j)] > 0.0);
        }
        let prod = l.matmul(&l.transpose());
        for j in 0..n {
            for i in 0..n {
                assert!(
                    (prod[(i, j)] - a[(i, j)]).abs() < 1e-14 * f.anorm(),
                    "L*L^T differs from A at ({i}, {j})"
                );
            }
        }
    }

    #[test]
    fn rcond_of_diagonal_is_exact() {
        let a = DenseMatrix::from_rows(2, 2, &[4.0, 0.0, 0.0, 1.0]);
        let f = cholesky_factor(&a).unwrap();
        assert_eq!(cholesky_rcond(&f), 0.25);
    }
}
