//! Partial-pivoting LU factorization, solve, and condition estimate for
//! general square matrices.

use crate::error::KernelError;
use crate::kernels::condest::rcond_from_factor;
use crate::matrix::{dot, norm1, DenseMatrix};

/// Packed LU factorization `P * A = L * U`.
///
/// The unit lower factor's multipliers sit below the diagonal of `matrix`
/// and `U` on and above it. `pivots[j] >= j` names the row swapped into
/// position at step `j`. `anorm` is the 1-norm of the original matrix.
#[derive(Clone, Debug)]
pub struct LuFactor {
    lu: DenseMatrix,
    pivots: Vec<usize>,
    anorm: f64,
}

impl LuFactor {
    pub fn matrix(&self) -> &DenseMatrix {
        &self.lu
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn order(&self) -> usize {
        self.pivots.len()
    }

    pub fn anorm(&self) -> f64 {
        self.anorm
    }
}

/// Factors a square matrix as `P * A = L * U` with partial pivoting.
///
/// The pivot of each column is its largest remaining absolute value; on a
/// tie the topmost row wins. Fails only on an exactly zero pivot, reporting
/// the 0-based column.
pub fn lu_factor(a: &DenseMatrix) -> Result<LuFactor, KernelError> {
    assert!(a.is_square(), "LU factorization requires a square matrix");
    assert!(!a.is_empty(), "LU factorization requires a non-empty matrix");
    let n = a.n_rows();
    let anorm = norm1(a);
    let mut m = a.clone();
    let data = m.data_mut();
    let mut pivots = vec![0usize; n];

    for j in 0..n {
        let col = &data[j * n..(j + 1) * n];
        let mut p = j;
        let mut best = col[j].abs();
        for (i, v) in col.iter().enumerate().skip(j + 1) {
            if v.abs() > best {
                best = v.abs();
                p = i;
            }
        }
        pivots[j] = p;
        if data[j * n + p] == 0.0 {
            return Err(KernelError::Singular { column: j });
        }
        if p != j {
            for c in 0..n {
                data.swap(c * n + j, c * n + p);
            }
        }
        let piv = data[j * n + j];
        for v in data[j * n + j + 1..(j + 1) * n].iter_mut() {
            *v /= piv;
        }
        // The trailing update runs unconditionally: a structure-blind cost is
        // the point of this path, and the branch-free loop is faster on the
        // dense matrices it exists for.
        for c in j + 1..n {
            let (left, right) = data.split_at_mut(c * n);
            let multipliers = &left[j * n + j + 1..(j + 1) * n];
            let a_jc = right[j];
            for (r, &l) in right[j + 1..n].iter_mut().zip(multipliers) {
                *r -= l * a_jc;
            }
        }
    }
    Ok(LuFactor { lu: m, pivots, anorm })
}

/// Overwrites `x` with `inv(A) * x` (or `inv(A)^T * x`) using the factors.
pub(crate) fn lu_solve_vec(f: &LuFactor, x: &mut [f64], transpose: bool) {
    let n = f.order();
    assert_eq!(x.len(), n);
    let lu = f.lu.data();
    if !transpose {
        for (i, &p) in f.pivots.iter().enumerate() {
            if p != i {
                x.swap(i, p);
            }
        }
        // Forward with unit L, then back with U.
        for j in 0..n {
            let xj = x[j];
            if xj != 0.0 {
                let col = &lu[j * n..(j + 1) * n];
                for (v, &l) in x[j + 1..].iter_mut().zip(&col[j + 1..]) {
                    *v -= l * xj;
                }
            }
        }
        for j in (0..n).rev() {
            let col = &lu[j * n..(j + 1) * n];
            x[j] /= col[j];
            let xj = x[j];
            if xj != 0.0 {
                for (v, &u) in x[..j].iter_mut().zip(&col[..j]) {
                    *v -= u * xj;
                }
            }
        }
    } else {
        // U^T forward, L^T back, then the pivot swaps in reverse.
        for j in 0..n {
            let col = &lu[j * n..(j + 1) * n];
            x[j] = (x[j] - dot(&col[..j], &x[..j])) / col[j];
        }
        for j in (0..n).rev() {
            let col = &lu[j * n..(j + 1) * n];
            x[j] -= dot(&col[j + 1..], &x[j + 1..]);
        }
        for (i, &p) in f.pivots.iter().enumerate().rev() {
            if p != i {
                x.swap(i, p);
            }
        }
    }
}

/// Solves `A * X = B` for every column of `B` using the factors of `A`.
pub fn lu_solve(f: &LuFactor, b: &DenseMatrix) -> DenseMatrix {
    assert_eq!(b.n_rows(), f.order(), "right-hand side row count mismatch");
    let mut x = b.clone();
    for j in 0..x.n_cols() {
        lu_solve_vec(f, x.column_mut(j), false);
    }
    x
}

/// Reciprocal 1-norm condition estimate from the factors, in `[0, 1]`.
pub fn lu_rcond(f: &LuFactor) -> f64 {
    rcond_from_factor(f.anorm, f.order(), |x, t| lu_solve_vec(f, x, t))
}
