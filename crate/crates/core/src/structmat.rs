//! The structured matrix families behind ball volumes and `Omega_d(x)`.
//!
//! All index formulas are written 1-based; [`Matrix::from_fn`] converts to
//! row-major storage.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Semiring;
use crate::{IntMatrix, IntPolynomial, PolyMatrix, Polynomial};

/// Dense rectangular row-major matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::domain("matrix dimensions must be positive"));
        }
        if entries.len() != rows * cols {
            return Err(Error::domain(format!(
                "{} entries do not fill a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from a function of the 1-based `(i, j)` position.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 1..=rows {
            for j in 1..=cols {
                entries.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::domain("ragged rows"));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
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

    /// Entry at 0-based `(r, c)`.
    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[T]> {
        self.entries.chunks(self.cols)
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Reorders rows and columns: row `r` of the result is row `row_perm[r]`
    /// of `self`, likewise for columns.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Self
    where
        T: Clone,
    {
        assert_eq!(row_perm.len(), self.rows);
        assert_eq!(col_perm.len(), self.cols);
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(row_perm[i - 1], col_perm[j - 1]).clone()
        })
    }

    pub fn to_rows(&self) -> Vec<Vec<T>>
    where
        T: Clone,
    {
        self.row_iter().map(<[T]>::to_vec).collect()
    }
}

impl<T: Semiring> Matrix<T> {
    pub fn row_sums(&self) -> Vec<T> {
        self.row_iter()
            .map(|row| row.iter().cloned().fold(T::zero(), |a, b| a + b))
            .collect()
    }

    pub fn col_sums(&self) -> Vec<T> {
        let mut sums = vec![T::zero(); self.cols];
        for row in self.row_iter() {
            for (s, v) in sums.iter_mut().zip(row) {
                *s = s.clone() + v.clone();
            }
        }
        sums
    }
}

impl PolyMatrix {
    /// Evaluates every polynomial entry at `x`.
    pub fn substitute<U>(&self, x: &U) -> Matrix<U>
    where
        U: Semiring + From<BigInt>,
    {
        self.map(|p| p.eval(x))
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    /// Plain-text grid, columns right-aligned.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for (r, row) in cells.chunks(self.cols).enumerate() {
            if r > 0 {
                writeln!(f)?;
            }
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            f.write_str(&line.join(" "))?;
        }
        Ok(())
    }
}

/// `A^(d,n)`: the `n x n` 0/1 matrix with ones exactly where `|i - j| <= d`.
pub fn build_band_matrix(d: usize, n: usize) -> IntMatrix {
    Matrix::from_fn(n, n, |i, j| u32::from(i.abs_diff(j) <= d))
}

/// `B^(d,n)`: the band matrix with doubled corners, every line summing to
/// `2d + 1`. Requires `n >= 2d + 1`.
pub fn build_klove_matrix(d: usize, n: usize) -> Result<IntMatrix> {
    if d == 0 {
        return Err(Error::domain("doubled-band matrix needs d >= 1"));
    }
    if n < 2 * d + 1 {
        return Err(Error::domain(format!(
            "doubled-band matrix needs n >= 2d + 1 (got d = {d}, n = {n})"
        )));
    }
    Ok(Matrix::from_fn(n, n, |i, j| {
        if i > j + d || j > i + d {
            0
        } else if i + j <= d + 1 || i + j >= 2 * n + 1 - d {
            2
        } else {
            1
        }
    }))
}

/// `A_{d,x}`: the `d x 2d` matrix with `x` for `j <= d + 1 - i`, `1` for
/// `d + 2 - i <= j <= d + i` and `0` beyond.
pub fn build_omega_matrix(d: usize) -> Result<PolyMatrix> {
    if d == 0 {
        return Err(Error::domain("A_{d,x} needs d >= 1"));
    }
    let x = Polynomial::x();
    Ok(Matrix::from_fn(d, 2 * d, |i, j| {
        if j + i <= d + 1 {
            x.clone()
        } else if j <= d + i {
            IntPolynomial::one()
        } else {
            IntPolynomial::zero()
        }
    }))
}
