//! Column-major dense matrix and vector types shared by every solver path.

use std::ops::{Index, IndexMut};

/// Machine epsilon for `f64`: the distance from 1.0 to the next larger
/// representable value, roughly `2.22e-16`.
pub fn machine_epsilon() -> f64 {
    f64::EPSILON
}

/// Dense matrix of `f64` values in column-major order.
///
/// Element `(i, j)` lives at `data[i + j * n_rows]`. Row and column indices
/// start at zero everywhere in this crate.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    n_rows: usize,
    n_cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    /// Wraps an existing column-major buffer. `data.len()` must equal
    /// `n_rows * n_cols`.
    pub fn from_column_major(n_rows: usize, n_cols: usize, data: Vec<f64>) -> Self {
        assert_eq!(
            data.len(),
            n_rows * n_cols,
            "buffer length {} does not match {n_rows}x{n_cols}",
            data.len()
        );
        DenseMatrix { n_rows, n_cols, data }
    }

    /// Builds a matrix from values listed row by row, which is how test
    /// fixtures are most readable.
    pub fn from_rows(n_rows: usize, n_cols: usize, values: &[f64]) -> Self {
        assert_eq!(values.len(), n_rows * n_cols);
        let mut m = DenseMatrix::zeros(n_rows, n_cols);
        for i in 0..n_rows {
            for j in 0..n_cols {
                m[(i, j)] = values[i * n_cols + j];
            }
        }
        m
    }

    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        DenseMatrix { n_rows, n_cols, data: vec![0.0; n_rows * n_cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = DenseMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    /// Fills column by column with `f(i, j)`.
    pub fn from_fn(n_rows: usize, n_cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(n_rows * n_cols);
        for j in 0..n_cols {
            for i in 0..n_rows {
                data.push(f(i, j));
            }
        }
        DenseMatrix { n_rows, n_cols, data }
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn is_square(&self) -> bool {
        self.n_rows == self.n_cols
    }

    pub fn is_empty(&self) -> bool {
        self.n_rows == 0 || self.n_cols == 0
    }

    /// The underlying column-major buffer.
    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub(crate) fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn column(&self, j: usize) -> &[f64] {
        assert!(j < self.n_cols);
        &self.data[j * self.n_rows..(j + 1) * self.n_rows]
    }

    pub fn column_mut(&mut self, j: usize) -> &mut [f64] {
        assert!(j < self.n_cols);
        &mut self.data[j * self.n_rows..(j + 1) * self.n_rows]
    }

    pub fn transpose(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.n_cols, self.n_rows, |i, j| self[(j, i)])
    }

    pub fn all_finite(&self) -> bool {
        // Chunked so the common all-finite case vectorizes; a non-finite
        // value still exits at chunk granularity.
        let mut chunks = self.data.chunks_exact(16);
        for chunk in &mut chunks {
            let mut ok = true;
            for v in chunk {
                ok &= v.is_finite();
            }
            if !ok {
                return false;
            }
        }
        chunks.remainder().iter().all(|v| v.is_finite())
    }

    /// Dense product `self * rhs`.
    pub fn matmul(&self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!(
            self.n_cols, rhs.n_rows,
            "inner dimensions differ: {}x{} times {}x{}",
            self.n_rows, self.n_cols, rhs.n_rows, rhs.n_cols
        );
        let m = self.n_rows;
        let mut out = DenseMatrix::zeros(m, rhs.n_cols);
        for j in 0..rhs.n_cols {
            let bcol = rhs.column(j);
            let ocol = out.column_mut(j);
            for (l, &b) in bcol.iter().enumerate() {
                if b != 0.0 {
                    let acol = self.column(l);
                    for (o, &a) in ocol.iter_mut().zip(acol) {
                        *o += a * b;
                    }
                }
            }
        }
        out
    }

    /// Copy with every element multiplied by `c`.
    pub fn scaled(&self, c: f64) -> DenseMatrix {
        let mut out = self.clone();
        for v in out.data.iter_mut() {
            *v *= c;
        }
        out
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        debug_assert!(i < self.n_rows && j < self.n_cols);
        &self.data[i + j * self.n_rows]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        debug_assert!(i < self.n_rows && j < self.n_cols);
        &mut self.data[i + j * self.n_rows]
    }
}

/// 1-norm of a matrix: the maximum absolute column sum.
pub fn norm1(a: &DenseMatrix) -> f64 {
    let mut best = 0.0f64;
    for j in 0..a.n_cols() {
        let sum = abs_sum(a.column(j));
        if sum > best {
            best = sum;
        }
    }
    best
}

/// Sum of absolute values over four independent accumulators. The split
/// breaks the floating-point add latency chain so the loop pipelines; the
/// resulting reassociation of the sum is fixed and deterministic.
pub(crate) fn abs_sum(x: &[f64]) -> f64 {
    let mut acc = [0.0f64; 4];
    let mut chunks = x.chunks_exact(4);
    for c in &mut chunks {
        acc[0] += c[0].abs();
        acc[1] += c[1].abs();
        acc[2] += c[2].abs();
        acc[3] += c[3].abs();
    }
    let tail: f64 = chunks.remainder().iter().map(|v| v.abs()).sum();
    (acc[0] + acc[2]) + (acc[1] + acc[3]) + tail
}

/// Dot product over four independent accumulators; same latency-chain and
/// determinism notes as [`abs_sum`].
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = [0.0f64; 4];
    let mut ca = a.chunks_exact(4);
    let mut cb = b.chunks_exact(4);
    for (pa, pb) in (&mut ca).zip(&mut cb) {
        acc[0] += pa[0] * pb[0];
        acc[1] += pa[1] * pb[1];
        acc[2] += pa[2] * pb[2];
        acc[3] += pa[3] * pb[3];
    }
    let tail: f64 = ca.remainder().iter().zip(cb.remainder()).map(|(x, y)| x * y).sum();
    (acc[0] + acc[2]) + (acc[1] + acc[3]) + tail
}

/// Dense column vector of `f64` values.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector {
    data: Vec<f64>,
}

impl Vector {
    pub fn from_vec(data: Vec<f64>) -> Self {
        Vector { data }
    }

    pub fn from_slice(data: &[f64]) -> Self {
        Vector { data: data.to_vec() }
    }

    pub fn zeros(n: usize) -> Self {
        Vector { data: vec![0.0; n] }
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// View of this vector as an `n x 1` matrix.
    pub fn to_column_matrix(&self) -> DenseMatrix {
        DenseMatrix::from_column_major(self.data.len(), 1, self.data.clone())
    }

    /// Extracts the single column of an `n x 1` matrix.
    pub fn from_column_matrix(m: &DenseMatrix) -> Self {
        assert_eq!(m.n_cols(), 1, "expected a single-column matrix");
        Vector { data: m.data().to_vec() }
    }
}

impl Index<usize> for Vector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.data[i]
    }
}
