//! Iterative 1-norm estimation for the inverse of a factored matrix.
//!
//! The estimator never forms the inverse: the caller supplies a closure that
//! overwrites a vector with `inv(A) * x` or `inv(A)^T * x` using an existing
//! factorization, and the estimator probes it with a handful of right-hand
//! sides. The returned value is a lower bound on `norm1(inv(A))`, which makes
//! the derived rcond an upper bound on the true one; on diagonal matrices the
//! probe finds the extreme column exactly.

/// Estimates `norm1(inv(A))` for the `n x n` operator behind `solve`.
///
/// `solve(x, transpose)` must overwrite `x` with `inv(A) * x`
/// (or `inv(A)^T * x` when `transpose` is true).
pub(crate) fn inverse_norm1_estimate<F>(n: usize, mut solve: F) -> f64
where
    F: FnMut(&mut [f64], bool),
{
    const ITMAX: usize = 5;
    assert!(n > 0);

    let asum = crate::matrix::abs_sum;
    let imax = |x: &[f64]| {
        let mut best = 0usize;
        for (i, v) in x.iter().enumerate() {
            if v.abs() > x[best].abs() {
                best = i;
            }
        }
        best
    };
    // Sign convention: +1 for non-negative (including -0.0), -1 otherwise.
    let sign_of = |v: f64| if v >= 0.0 { 1.0f64 } else { -1.0 };

    let mut x = vec![1.0 / n as f64; n];
    solve(&mut x, false);
    if n == 1 {
        return x[0].abs();
    }
    let mut est = asum(&x);

    let mut isgn = vec![0.0f64; n];
    for (s, v) in isgn.iter_mut().zip(&x) {
        *s = sign_of(*v);
    }
    x.copy_from_slice(&isgn);
    solve(&mut x, true);
    let mut j = imax(&x);

    let mut iter = 2;
    loop {
        x.fill(0.0);
        x[j] = 1.0;
        solve(&mut x, false);
        let est_old = est;
        est = asum(&x);
        // Converged when the sign pattern repeats or the estimate stops
        // growing.
        if x.iter().zip(&isgn).all(|(v, s)| sign_of(*v) == *s) {
            break;
        }
        if est <= est_old {
            break;
        }
        for (s, v) in isgn.iter_mut().zip(&x) {
            *s = sign_of(*v);
        }
        x.copy_from_slice(&isgn);
        solve(&mut x, true);
        let j_last = j;
        j = imax(&x);
        if x[j_last] == x[j].abs() || iter >= ITMAX {
            break;
        }
        iter += 1;
    }

    // Final probe with an alternating, linearly graded vector; keeps the
    // larger of the two estimates.
    let mut alt_sign = 1.0;
    for (i, v) in x.iter_mut().enumerate() {
        *v = alt_sign * (1.0 + i as f64 / (n - 1) as f64);
        alt_sign = -alt_sign;
    }
    solve(&mut x, false);
    let alt = 2.0 * asum(&x) / (3 * n) as f64;
    est.max(alt)
}

/// Reciprocal condition estimate `1 / (anorm * norm1_est(inv(A)))`, clamped
/// to `[0, 1]`. `anorm` must be the 1-norm of the matrix that was factored.
pub(crate) fn rcond_from_factor<F>(anorm: f64, n: usize, solve: F) -> f64
where
    F: FnMut(&mut [f64], bool),
{
    if anorm == 0.0 {
        return 0.0;
    }
    let inv_norm = inverse_norm1_estimate(n, solve);
    if inv_norm == 0.0 {
        return 0.0;
    }
    ((1.0 / inv_norm) / anorm).min(1.0)
}
