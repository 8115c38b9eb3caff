//! Band storage plus LU factorization and solves that stay inside the band.
//!
//! Storage layout: a square matrix with `kl` subdiagonals and `ku`
//! superdiagonals packs into a `(2*kl + ku + 1) x n` array with element
//! `(i, j)` at row `kl + ku + i - j` of column `j`. The top `kl` rows start
//! as zero fill and receive the extra superdiagonals that row interchanges
//! produce during factorization.

use crate::error::KernelError;
use crate::kernels::condest::rcond_from_factor;
use crate::matrix::DenseMatrix;

/// A square banded matrix in packed storage.
#[derive(Clone, Debug)]
pub struct BandedStorage {
    kl: usize,
    ku: usize,
    n: usize,
    ab: DenseMatrix,
}

impl BandedStorage {
    pub fn kl(&self) -> usize {
        self.kl
    }

    pub fn ku(&self) -> usize {
        self.ku
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// The packed array, `(2*kl + ku + 1) x n`.
    pub fn packed(&self) -> &DenseMatrix {
        &self.ab
    }

    /// Expands back to a dense matrix; zeros outside the band.
    pub fn to_dense(&self) -> DenseMatrix {
        let (kl, ku, n) = (self.kl, self.ku, self.n);
        DenseMatrix::from_fn(n, n, |i, j| {
            if j + kl >= i && i + ku >= j {
                self.ab[(kl + ku + i - j, j)]
            } else {
                0.0
            }
        })
    }
}

/// Packs the band of a square matrix into band storage. Elements outside the
/// band are never read, so the band description is trusted as-is.
pub fn pack_band(a: &DenseMatrix, kl: usize, ku: usize) -> BandedStorage {
    assert!(a.is_square(), "band packing requires a square matrix");
    let n = a.n_rows();
    assert!(n > 0, "band packing requires a non-empty matrix");
    assert!(kl < n && ku < n, "band widths must be below the matrix order");
    let mut ab = DenseMatrix::zeros(2 * kl + ku + 1, n);
    for j in 0..n {
        let lo = j.saturating_sub(ku);
        let hi = (j + kl).min(n - 1);
        for i in lo..=hi {
            ab[(kl + ku + i - j, j)] = a[(i, j)];
        }
    }
    BandedStorage { kl, ku, n, ab }
}

/// Packed LU factors of a banded matrix, with the multipliers kept in the
/// subdiagonal slots and `U` occupying up to `kl + ku` superdiagonals.
#[derive(Clone, Debug)]
pub struct BandFactor {
    ab: DenseMatrix,
    pivots: Vec<usize>,
    kl: usize,
    ku: usize,
    n: usize,
    anorm: f64,
}

impl BandFactor {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn anorm(&self) -> f64 {
        self.anorm
    }
}

/// 1-norm computed from the packed band (in-band column sums).
fn band_norm1(s: &BandedStorage) -> f64 {
    let (kl, ku, n) = (s.kl, s.ku, s.n);
    let mut best = 0.0f64;
    for j in 0..n {
        let lo = j.saturating_sub(ku);
        let hi = (j + kl).min(n - 1);
        let mut sum = 0.0;
        for i in lo..=hi {
            sum += s.ab[(kl + ku + i - j, j)].abs();
        }
        if sum > best {
            best = sum;
        }
    }
    best
}

/// Factors a banded matrix in packed storage with partial pivoting. Row
/// interchanges stay within `kl` rows of the diagonal, so the factors fit in
/// the same array. Fails only on an exactly zero pivot, reporting the
/// 0-based column.
pub fn band_factor(storage: BandedStorage) -> Result<BandFactor, KernelError> {
    let anorm = band_norm1(&storage);
    let BandedStorage { kl, ku, n, mut ab } = storage;
    let kv = kl + ku;
    let ldab = 2 * kl + ku + 1;
    let data = ab.data_mut();
    let mut pivots = vec![0usize; n];

    // Highest column index touched by eliminations so far.
    let mut ju = 0usize;
    for j in 0..n {
        // The column entering the band window gets its fill rows cleared.
        if j + kv < n && kl > 0 {
            for v in data[(j + kv) * ldab..(j + kv) * ldab + kl].iter_mut() {
                *v = 0.0;
            }
        }
        // Pivot among the diagonal and the km subdiagonal entries of column j.
        let km = kl.min(n - 1 - j);
        let col = &data[j * ldab..(j + 1) * ldab];
        let mut p = 0usize;
        let mut best = col[kv].abs();
        for t in 1..=km {
            let v = col[kv + t].abs();
            if v > best {
                best = v;
                p = t;
            }
        }
        pivots[j] = j + p;
        if data[j * ldab + kv + p] == 0.0 {
            return Err(KernelError::Singular { column: j });
        }
        ju = ju.max((j + ku + p).min(n - 1));
        if p != 0 {
            // Swap the in-band parts of rows j and j+p across columns j..=ju.
            for c in j..=ju {
                let r1 = kv + j - c;
                data.swap(c * ldab + r1, c * ldab + r1 + p);
            }
        }
        if km > 0 {
            let piv = data[j * ldab + kv];
            for v in data[j * ldab + kv + 1..j * ldab + kv + km + 1].iter_mut() {
                *v /= piv;
            }
            for c in j + 1..=ju {
                let (left, right) = data.split_at_mut(c * ldab);
                let multipliers = &left[j * ldab + kv + 1..j * ldab + kv + km + 1];
                let top = kv + j - c;
                let u_jc = right[top];
                if u_jc != 0.0 {
                    for (v, &l) in right[top + 1..top + 1 + km].iter_mut().zip(multipliers) {
                        *v -= l * u_jc;
                    }
                }
            }
        }
    }
    Ok(BandFactor { ab, pivots, kl, ku, n, anorm })
}

/// Overwrites `x` with `inv(A) * x` (or `inv(A)^T * x`) using band factors.
pub(crate) fn band_solve_vec(f: &BandFactor, x: &mut [f64], transpose: bool) {
    let (kl, ku, n) = (f.kl, f.ku, f.n);
    let kv = kl + ku;
    assert_eq!(x.len(), n);
    if !transpose {
        // Apply L (swap plus multiplier elimination per column)...
        if kl > 0 {
            for j in 0..n - 1 {
                let lm = kl.min(n - 1 - j);
                let p = f.pivots[j];
                if p != j {
                    x.swap(p, j);
                }
                let xj = x[j];
                if xj != 0.0 {
                    let col = f.ab.column(j);
                    for t in 1..=lm {
                        x[j + t] -= col[kv + t] * xj;
                    }
                }
            }
        }
        // ...then back-substitute with the banded U.
        for j in (0..n).rev() {
            let col = f.ab.column(j);
            x[j] /= col[kv];
            let xj = x[j];
            if xj != 0.0 {
                let lo = j.saturating_sub(kv);
                for i in lo..j {
                    x[i] -= col[kv + i - j] * xj;
                }
            }
        }
    } else {
        // U^T forward...
        for j in 0..n {
            let col = f.ab.column(j);
            let lo = j.saturating_sub(kv);
            let mut s = x[j];
            for i in lo..j {
                s -= col[kv + i - j] * x[i];
            }
            x[j] = s / col[kv];
        }
        // ...then L^T with the swaps unwound in reverse.
        if kl > 0 {
            for j in (0..n - 1).rev() {
                let lm = kl.min(n - 1 - j);
                let col = f.ab.column(j);
                let mut s = x[j];
                for t in 1..=lm {
                    s -= col[kv + t] * x[j + t];
                }
                x[j] = s;
                let p = f.pivots[j];
                if p != j {
                    x.swap(p, j);
                }
            }
        }
    }
}

/// Solves `A * X = B` for every column of `B` using the band factors.
pub fn band_solve(f: &BandFactor, b: &DenseMatrix) -> DenseMatrix {
    assert_eq!(b.n_rows(), f.n, "right-hand side row count mismatch");
    let mut x = b.clone();
    for j in 0..x.n_cols() {
        band_solve_vec(f, x.column_mut(j), false);
    }
    x
}

/// Reciprocal 1-norm condition estimate from the band factors, in `[0, 1]`.
pub fn band_rcond(f: &BandFactor) -> f64 {
    rcond_from_factor(f.anorm, f.n, |x, t| band_solve_vec(f, x, t))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn banded_5x5_example() -> DenseMatrix {
        DenseMatrix::from_rows(
            5,
            5,
            &[
                1.0, 9.0, 0.0, 0.0, 0.0, //
                6.0, 2.0, 8.0, 0.0, 0.0, //
                0.0, 7.0, 3.0, 7.0, 0.0, //
                0.0, 0.0, 8.0, 4.0, 6.0, //
                0.0, 0.0, 0.0, 9.0, 5.0,
            ],
        )
    }

    #[test]
    fn packing_layout_and_round_trip() {
        let a = banded_5x5_example();
        let s = pack_band(&a, 1, 1);
        assert_eq!(s.packed().n_rows(), 4);
        assert_eq!(s.packed().n_cols(), 5);
        // Row kl + ku of the packed array is the main diagonal.
        for j in 0..5 {
            assert_eq!(s.packed()[(2, j)], a[(j, j)]);
        }
        assert_eq!(s.to_dense(), a);
    }

    #[test]
    fn packing_ignores_elements_outside_the_band() {
        let mut a = banded_5x5_example();
        a[(0, 4)] = f64::NAN;
        a[(4, 0)] = f64::NAN;
        let s = pack_band(&a, 1, 1);
        assert!(s.packed().all_finite());
    }

    #[test]
    fn diagonal_band_solve() {
        let a = DenseMatrix::from_rows(2, 2, &[2.0, 0.0, 0.0, 4.0]);
        let f = band_factor(pack_band(&a, 0, 0)).unwrap();
        let b = DenseMatrix::from_column_major(2, 1, vec![2.0, 8.0]);
        let x = band_solve(&f, &b);
        assert_eq!(x[(0, 0)], 1.0);
        assert_eq!(x[(1, 0)], 2.0);
        assert_eq!(band_rcond(&f), 0.5);
    }

    #[test]
    fn singular_band_reports_failing_column() {
        let a = DenseMatrix::from_rows(2, 2, &[1.0, 0.0, 0.0, 0.0]);
        let err = band_factor(pack_band(&a, 0, 0)).err();
        assert_eq!(err, Some(KernelError::Singular { column: 1 }));
    }

    #[test]
    fn tridiagonal_ones_system() {
        let n = 100;
        let a = DenseMatrix::from_fn(n, n, |i, j| {
            if i == j {
                4.0
            } else if i.abs_diff(j) == 1 {
                1.0
            } else {
                0.0
            }
        });
        let ones = DenseMatrix::from_column_major(n, 1, vec![1.0; n]);
        let b = a.matmul(&ones);
        let f = band_factor(pack_band(&a, 1, 1)).unwrap();
        let x = band_solve(&f, &b);
        for i in 0..n {
            assert!(
                (x[(i, 0)] - 1.0).abs() < 1e-12,
                "element {i} of the solution is {}",
                x[(i, 0)]
            );
        }
    }

    #[test]
    fn pivoting_handles_weak_diagonals() {
        // Small diagonal forces interchanges on every step.
        let n = 6;
        let a = DenseMatrix::from_fn(n, n, |i, j| {
            if i == j {
                1e-3
            } else if i == j + 1 {
                5.0
            } else if j == i + 1 {
                2.0
            } else {
                0.0
            }
        });
        let f = band_factor(pack_band(&a, 1, 1)).unwrap();
        assert!(f.pivots().iter().enumerate().any(|(j, &p)| p != j));
        let b = DenseMatrix::from_column_major(n, 1, (1..=n).map(|v| v as f64).collect());
        let x = band_solve(&f, &b);
        let back = a.matmul(&x);
        for i in 0..n {
            assert!((back[(i, 0)] - (i + 1) as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn transpose_solve_inverts_the_transpose() {
        let a = banded_5x5_example();
        // kl = ku = 1 covers every nonzero of the fixture.
        let f = band_factor(pack_band(&a, 1, 1)).unwrap();
        let mut x = vec![1.0, 2.0, -1.0, 0.5, 3.0];
        band_solve_vec(&f, &mut x, true);
        let back = a.transpose().matmul(&DenseMatrix::from_column_major(5, 1, x));
        for (i, want) in [1.0, 2.0, -1.0, 0.5, 3.0].iter().enumerate() {
            assert!((back[(i, 0)] - want).abs() < 1e-12);
        }
    }

    #[test]
    fn rcond_of_diagonal_band_is_exact() {
        let a = DenseMatrix::from_rows(3, 3, &[1.0, 0.0, 0.0, 0.0, 1e-8, 0.0, 0.0, 0.0, 1.0]);
        let f = band_factor(pack_band(&a, 0, 0)).unwrap();
        assert_eq!(band_rcond(&f), 1e-8);
    }
}
