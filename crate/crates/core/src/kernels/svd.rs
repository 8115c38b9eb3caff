//! Singular value decomposition by one-sided Jacobi rotations, plus the
//! minimum-norm least-squares solver built on it.
//!
//! The factorization works on the wider-than-tall transpose when needed, so
//! the iteration always orthogonalizes the columns of an `m x n` work matrix
//! with `m >= n`. Each sweep visits every column pair; a pair is rotated
//! unless its normalized inner product is already below `max(m, n) * eps`,
//! which bounds the off-diagonal mass of `U^T U` directly.

use crate::error::KernelError;
use crate::matrix::{machine_epsilon, DenseMatrix};

/// Thin SVD `A = U * diag(s) * V^T` with `r = min(m, n)`:
/// `U` is `m x r` with orthonormal columns, `s` is non-increasing and
/// non-negative, `V` is `n x r` with orthonormal columns.
#[derive(Clone, Debug)]
pub struct SvdFactor {
    u: DenseMatrix,
    s: Vec<f64>,
    v: DenseMatrix,
}

impl SvdFactor {
    pub fn u(&self) -> &DenseMatrix {
        &self.u
    }

    pub fn singular_values(&self) -> &[f64] {
        &self.s
    }

    pub fn v(&self) -> &DenseMatrix {
        &self.v
    }
}

const MAX_SWEEPS: usize = 30;

/// Jacobi iteration on the columns of `work`, accumulating rotations in `v`
/// (which starts as the identity). Returns an error when rotations are still
/// occurring after the sweep limit.
fn orthogonalize_columns(work: &mut DenseMatrix, v: &mut DenseMatrix) -> Result<(), KernelError> {
    let m = work.n_rows();
    let n = work.n_cols();
    let tol = m.max(n) as f64 * machine_epsilon();
    let mut sweeps = 0;
    let mut rotated = true;
    while rotated {
        if sweeps == MAX_SWEEPS {
            return Err(KernelError::Convergence);
        }
        sweeps += 1;
        rotated = false;
        for p in 0..n.saturating_sub(1) {
            for q in p + 1..n {
                let mut alpha = 0.0f64;
                let mut beta = 0.0f64;
                let mut gamma = 0.0f64;
                for (&a, &b) in work.column(p).iter().zip(work.column(q)) {
                    alpha += a * a;
                    beta += b * b;
                    gamma += a * b;
                }
                if gamma == 0.0 || gamma.abs() <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let sign = if zeta >= 0.0 { 1.0 } else { -1.0 };
                let t = sign / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate_pair(work, p, q, c, s);
                rotate_pair(v, p, q, c, s);
            }
        }
    }
    Ok(())
}

/// Applies the plane rotation to columns `p` and `q` in place.
fn rotate_pair(m: &mut DenseMatrix, p: usize, q: usize, c: f64, s: f64) {
    let rows = m.n_rows();
    let (head, tail) = m.data_mut().split_at_mut(q * rows);
    let cp = &mut head[p * rows..(p + 1) * rows];
    let cq = &mut tail[..rows];
    for (a, b) in cp.iter_mut().zip(cq.iter_mut()) {
        let (x, y) = (*a, *b);
        *a = c * x - s * y;
        *b = s * x + c * y;
    }
}

/// Thin SVD of any non-empty matrix. Fails with `Convergence` if the
/// rotation sweeps do not settle within the hard limit of 30.
pub fn svd(a: &DenseMatrix) -> Result<SvdFactor, KernelError> {
    assert!(!a.is_empty(), "SVD requires a non-empty matrix");
    let transposed = a.n_rows() < a.n_cols();
    let mut work = if transposed { a.transpose() } else { a.clone() };
    let m = work.n_rows();
    let r = work.n_cols();
    let mut v = DenseMatrix::identity(r);
    orthogonalize_columns(&mut work, &mut v)?;

    // Column norms are the singular values; sort them descending and permute
    // both orthogonal factors the same way.
    let mut s: Vec<f64> = (0..r)
        .map(|j| work.column(j).iter().map(|x| x * x).sum::<f64>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by(|&i, &j| s[j].partial_cmp(&s[i]).expect("singular values are finite"));

    let mut u_sorted = DenseMatrix::zeros(m, r);
    let mut v_sorted = DenseMatrix::zeros(r, r);
    let s_sorted: Vec<f64> = order.iter().map(|&k| s[k]).collect();
    for (out, &k) in order.iter().enumerate() {
        let sk = s[k];
        let ucol = u_sorted.column_mut(out);
        if sk > 0.0 {
            for (u, &w) in ucol.iter_mut().zip(work.column(k)) {
                *u = w / sk;
            }
        } else {
            // Zero column: substitute a unit vector to keep U well-formed.
            ucol[out] = 1.0;
        }
        v_sorted.column_mut(out).copy_from_slice(v.column(k));
    }
    s = s_sorted;

    if transposed {
        Ok(SvdFactor { u: v_sorted, s, v: u_sorted })
    } else {
        Ok(SvdFactor { u: u_sorted, s, v: v_sorted })
    }
}

/// Minimum-norm least-squares solve: every column of `X` minimizes the
/// residual 2-norm of its column of `B`, and has the smallest 2-norm among
/// such minimizers. Singular values at or below `cutoff_ratio` times the
/// largest are treated as zero; the second return value is the retained
/// count (the effective rank).
pub fn lsq_min_norm(
    a: &DenseMatrix,
    b: &DenseMatrix,
    cutoff_ratio: f64,
) -> Result<(DenseMatrix, usize), KernelError> {
    assert_eq!(b.n_rows(), a.n_rows(), "right-hand side row count mismatch");
    let f = svd(a)?;
    let r = f.s.len();
    let cutoff = cutoff_ratio * f.s.first().copied().unwrap_or(0.0);
    let rank = f.s.iter().take_while(|&&s| s > cutoff).count();

    // X = V * pinv(S) * U^T * B, dropping the cut singular values.
    let k = b.n_cols();
    let mut scaled = DenseMatrix::zeros(r, k);
    for j in 0..k {
        let bcol = b.column(j);
        let out = scaled.column_mut(j);
        for (i, o) in out.iter_mut().enumerate().take(rank) {
            let dot: f64 = f.u.column(i).iter().zip(bcol).map(|(u, b)| u * b).sum();
            *o = dot / f.s[i];
        }
    }
    Ok((f.v.matmul(&scaled), rank))
}
