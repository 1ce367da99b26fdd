//! Small dense complex matrices and monomial (one nonzero per row) operators.
//!
//! Dense matrices back the verification paths (Yang-Baxter residuals, braid
//! words, reference products). Monomial matrices carry the permutation-phase
//! structure of the entanglers so large operators never get materialized.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use crate::error::{Error, Result};
use crate::scalar::{cone, czero, Real, C};

/// Largest side allowed for a dense export (twelve qubits).
pub const MAX_DENSE_DIM: usize = 1 << 12;

/// Row-major dense complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<T: Real> {
    rows: usize,
    cols: usize,
    data: Vec<C<T>>,
}

impl<T: Real> DenseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![czero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = cone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from nested rows; all rows must share a length.
    pub fn from_rows(rows: Vec<Vec<C<T>>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(n_rows * n_cols);
        for row in rows {
            if row.len() != n_cols {
                return Err(Error::LengthMismatch {
                    expected: n_cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self {
            rows: n_rows,
            cols: n_cols,
            data,
        })
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(entries: &[C<T>]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[C<T>] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<C<T>>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn scale(&self, factor: C<T>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for ar in 0..self.rows {
            for ac in 0..self.cols {
                let a = self[(ar, ac)];
                if a == czero() {
                    continue;
                }
                for br in 0..other.rows {
                    let dst = (ar * other.rows + br) * cols + ac * other.cols;
                    let src = other.row(br);
                    for (d, b) in out.data[dst..dst + other.cols].iter_mut().zip(src) {
                        *d = a * b;
                    }
                }
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            let out_row = &mut out.data[r * rhs.cols..(r + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k];
                if a == czero() {
                    continue;
                }
                for (o, b) in out_row.iter_mut().zip(rhs.row(k)) {
                    *o = *o + a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn mat_vec(&self, v: &[C<T>]) -> Result<Vec<C<T>>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(czero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn frobenius_norm(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, z| acc.max(z.norm()))
    }

    /// True when every off-diagonal entry is exactly zero.
    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self[(r, c)] == czero()))
    }

    pub fn diagonal_entries(&self) -> Vec<C<T>> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)])
            .collect()
    }

    /// Inverse by Gauss-Jordan elimination with partial pivoting.
    ///
    /// Fails with [`Error::NonInvertible`] when a pivot falls below
    /// `rel_pivot` times the largest entry of the input.
    pub fn inverse(&self, rel_pivot: T) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let scale = self.max_abs();
        if scale == T::zero() {
            return Err(Error::NonInvertible);
        }
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let (pivot_row, pivot_abs) = (col..n).map(|r| (r, a[(r, col)].norm())).fold(
                (col, T::neg_infinity()),
                |best, cur| if cur.1 > best.1 { cur } else { best },
            );
            if pivot_abs.is_nan() || pivot_abs <= rel_pivot * scale {
                return Err(Error::NonInvertible);
            }
            a.swap_rows(col, pivot_row);
            inv.swap_rows(col, pivot_row);
            let p = a[(col, col)].inv();
            for c in 0..n {
                a[(col, c)] = a[(col, c)] * p;
                inv[(col, c)] = inv[(col, c)] * p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[(r, col)];
                if f == czero() {
                    continue;
                }
                for c in 0..n {
                    let ac = a[(col, c)];
                    let ic = inv[(col, c)];
                    a[(r, c)] = a[(r, c)] - f * ac;
                    inv[(r, c)] = inv[(r, c)] - f * ic;
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl<T: Real> Index<(usize, usize)> for DenseMatrix<T> {
    type Output = C<T>;

    fn index(&self, (r, c): (usize, usize)) -> &C<T> {
        &self.data[r * self.cols + c]
    }
}

impl<T: Real> IndexMut<(usize, usize)> for DenseMatrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C<T> {
        &mut self.data[r * self.cols + c]
    }
}

impl<T: Real> Sub for &DenseMatrix<T> {
    type Output = DenseMatrix<T>;

    fn sub(self, rhs: &DenseMatrix<T>) -> DenseMatrix<T> {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch"
        );
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl<T: Real> Add for &DenseMatrix<T> {
    type Output = DenseMatrix<T>;

    fn add(self, rhs: &DenseMatrix<T>) -> DenseMatrix<T> {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch"
        );
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<T: Real> Mul for &DenseMatrix<T> {
    type Output = DenseMatrix<T>;

    /// Panics on mismatched shapes; use [`DenseMatrix::matmul`] for a checked product.
    fn mul(self, rhs: &DenseMatrix<T>) -> DenseMatrix<T> {
        self.matmul(rhs).expect("shape mismatch in matrix product")
    }
}

/// `‖op†·op − I‖_F`; zero exactly for a unitary operator.
pub fn unitarity_residual<T: Real>(op: &DenseMatrix<T>) -> Result<T> {
    if !op.is_square() {
        return Err(Error::NotSquare {
            rows: op.rows(),
            cols: op.cols(),
        });
    }
    let gram = op.adjoint().matmul(op)?;
    Ok((&gram - &DenseMatrix::identity(op.rows())).frobenius_norm())
}

/// Square matrix with exactly one stored entry per row: row `i` holds
/// `values[i]` in column `cols[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct MonomialMatrix<T: Real> {
    cols: Vec<usize>,
    values: Vec<C<T>>,
}

impl<T: Real> MonomialMatrix<T> {
    /// `cols` must be a permutation of `0..n`.
    pub fn new(cols: Vec<usize>, values: Vec<C<T>>) -> Result<Self> {
        let n = cols.len();
        if values.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: values.len(),
            });
        }
        let mut seen = vec![false; n];
        for &c in &cols {
            if c >= n || std::mem::replace(&mut seen[c], true) {
                return Err(Error::Format(format!(
                    "column map is not a permutation of 0..{n}"
                )));
            }
        }
        Ok(Self { cols, values })
    }

    /// Permutation matrix with ones at `(i, perm[i])`.
    pub fn permutation(perm: Vec<usize>) -> Result<Self> {
        let values = vec![cone(); perm.len()];
        Self::new(perm, values)
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn column_of(&self, row: usize) -> usize {
        self.cols[row]
    }

    pub fn value(&self, row: usize) -> C<T> {
        self.values[row]
    }

    /// `(row, col, value)` triples in row order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, C<T>)> + '_ {
        self.cols
            .iter()
            .zip(&self.values)
            .enumerate()
            .map(|(r, (&c, &v))| (r, c, v))
    }

    /// Matrix product `self · rhs`, kept in monomial form.
    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: rhs.dim(),
            });
        }
        let (cols, values) = self
            .entries()
            .map(|(_, k, v)| (rhs.cols[k], v * rhs.values[k]))
            .unzip();
        Ok(Self { cols, values })
    }

    pub fn apply(&self, v: &[C<T>]) -> Result<Vec<C<T>>> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            });
        }
        Ok(self.entries().map(|(_, c, a)| a * v[c]).collect())
    }

    pub fn is_diagonal(&self) -> bool {
        self.cols.iter().enumerate().all(|(r, &c)| r == c)
    }

    pub fn to_dense(&self) -> Result<DenseMatrix<T>> {
        let n = self.dim();
        if n > MAX_DENSE_DIM {
            return Err(Error::TooLarge {
                dim: n,
                cap: MAX_DENSE_DIM,
            });
        }
        let mut m = DenseMatrix::zeros(n, n);
        for (r, c, v) in self.entries() {
            m[(r, c)] = v;
        }
        Ok(m)
    }

    /// `‖M†M − I‖_F`, which for a monomial matrix only involves `|value|²`.
    pub fn unitarity_residual(&self) -> T {
        self.values
            .iter()
            .fold(T::zero(), |acc, z| {
                let d = z.norm_sqr() - T::one();
                acc + d * d
            })
            .sqrt()
    }
}
