//! Dense matrices over an exact scalar field.
//!
//! Entries are stored row-major; equality is entrywise and exact. All
//! values are immutable after construction and every operation returns a
//! fresh matrix, so values can be shared freely across threads.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use thiserror::Error;

use crate::scalar::{from_i64, Scalar};

/// Structural errors raised by matrix construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("{op}: dimension mismatch, {lhs_rows}x{lhs_cols} vs {rhs_rows}x{rhs_cols}")]
    DimMismatch {
        op: &'static str,
        lhs_rows: usize,
        lhs_cols: usize,
        rhs_rows: usize,
        rhs_cols: usize,
    },
    #[error("{op}: matrix is {rows}x{cols}, expected square")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },
    #[error("row {row} has {len} entries, expected {cols}")]
    RaggedRows { row: usize, len: usize, cols: usize },
}

/// Dense `rows x cols` matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    /// Build a matrix from row vectors, checking that rows are even.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, LinAlgError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(LinAlgError::RaggedRows {
                    row: i,
                    len: row.len(),
                    cols: ncols,
                });
            }
        }
        Ok(Self {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Build a matrix entry by entry from a closure over (row, col).
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    /// Convenience constructor from integer literals, mostly for tests
    /// and embedded example data.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| from_i64(x)).collect())
                .collect(),
        )
        .expect("integer rows must be rectangular")
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, dim, |r, c| if r == c { T::one() } else { T::zero() })
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(diag: &[T]) -> Self {
        Self::from_fn(diag.len(), diag.len(), |r, c| {
            if r == c {
                diag[r].clone()
            } else {
                T::zero()
            }
        })
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

    /// Side length of a square matrix.
    ///
    /// Panics if the matrix is not square; callers check squareness at
    /// the input boundary.
    pub fn dim(&self) -> usize {
        assert!(
            self.is_square(),
            "dim() on a {}x{} matrix",
            self.rows,
            self.cols
        );
        self.rows
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix::from_fn(self.rows, self.cols, |r, c| f(&self[(r, c)]))
    }

    fn same_shape(&self, rhs: &Self, op: &'static str) -> Result<(), LinAlgError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(LinAlgError::DimMismatch {
                op,
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: rhs.rows,
                rhs_cols: rhs.cols,
            });
        }
        Ok(())
    }

    /// Entrywise sum; rejects mismatched shapes.
    pub fn try_add(&self, rhs: &Self) -> Result<Self, LinAlgError> {
        self.same_shape(rhs, "add")?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    /// Entrywise difference; rejects mismatched shapes.
    pub fn try_sub(&self, rhs: &Self) -> Result<Self, LinAlgError> {
        self.same_shape(rhs, "sub")?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        })
    }

    /// Matrix product; rejects non-conformable dimensions.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self, LinAlgError> {
        if self.cols != rhs.rows {
            return Err(LinAlgError::DimMismatch {
                op: "mul",
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: rhs.rows,
                rhs_cols: rhs.cols,
            });
        }
        let mut out = Matrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let term = a.clone() * rhs[(k, j)].clone();
                    out[(i, j)] += term;
                }
            }
        }
        Ok(out)
    }

    /// Multiply every entry by `k`.
    pub fn scale(&self, k: &T) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.clone() * k.clone()).collect(),
        }
    }

    /// `m`-th power by repeated squaring; `pow(0)` is the identity.
    pub fn try_pow(&self, m: usize) -> Result<Self, LinAlgError> {
        if !self.is_square() {
            return Err(LinAlgError::NotSquare {
                op: "pow",
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        let mut exp = m;
        while exp > 0 {
            if exp & 1 == 1 {
                result = &result * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        Ok(result)
    }

    /// `m`-th power of a square matrix.
    pub fn pow(&self, m: usize) -> Self {
        self.try_pow(m).expect("pow requires a square matrix")
    }

    /// Whether the matrix is nilpotent, i.e. some power vanishes.
    ///
    /// For a `k x k` matrix it suffices to test the `k`-th power.
    pub fn is_nilpotent(&self) -> bool {
        assert!(
            self.is_square(),
            "nilpotency is defined for square matrices"
        );
        self.pow(self.rows).is_zero()
    }

    pub fn trace(&self) -> T {
        assert!(self.is_square(), "trace requires a square matrix");
        let mut acc = T::zero();
        for i in 0..self.rows {
            acc += self[(i, i)].clone();
        }
        acc
    }

    /// Copy of the rectangular region `[r0, r1) x [c0, c1)`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        assert!(r0 <= r1 && r1 <= self.rows && c0 <= c1 && c1 <= self.cols);
        Self::from_fn(r1 - r0, c1 - c0, |r, c| self[(r0 + r, c0 + c)].clone())
    }

    /// Column `c` as a `rows x 1` matrix.
    pub fn column(&self, c: usize) -> Self {
        self.submatrix(0, self.rows, c, c + 1)
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.rows, rhs.rows, "hstack requires equal row counts");
        Self::from_fn(self.rows, self.cols + rhs.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                rhs[(r, c - self.cols)].clone()
            }
        })
    }

    /// Vertical concatenation `[self; rhs]`.
    pub fn vstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.cols, "vstack requires equal column counts");
        Self::from_fn(self.rows + rhs.rows, self.cols, |r, c| {
            if r < self.rows {
                self[(r, c)].clone()
            } else {
                rhs[(r - self.rows, c)].clone()
            }
        })
    }

    /// Block-diagonal matrix assembled from square blocks.
    pub fn block_diag(blocks: &[&Self]) -> Self {
        let dim: usize = blocks.iter().map(|b| b.dim()).sum();
        let mut out = Self::zero(dim, dim);
        let mut offset = 0;
        for block in blocks {
            for r in 0..block.rows {
                for c in 0..block.cols {
                    out[(offset + r, offset + c)] = block[(r, c)].clone();
                }
            }
            offset += block.rows;
        }
        out
    }

    /// The four-block matrix `[[tl, tr], [bl, br]]`.
    pub fn from_blocks(tl: &Self, tr: &Self, bl: &Self, br: &Self) -> Self {
        assert_eq!(tl.rows, tr.rows, "top blocks must share row count");
        assert_eq!(bl.rows, br.rows, "bottom blocks must share row count");
        assert_eq!(tl.cols, bl.cols, "left blocks must share column count");
        assert_eq!(tr.cols, br.cols, "right blocks must share column count");
        Self::from_fn(tl.rows + bl.rows, tl.cols + tr.cols, |r, c| {
            match (r < tl.rows, c < tl.cols) {
                (true, true) => tl[(r, c)].clone(),
                (true, false) => tr[(r, c - tl.cols)].clone(),
                (false, true) => bl[(r - tl.rows, c)].clone(),
                (false, false) => br[(r - tl.rows, c - tl.cols)].clone(),
            }
        })
    }

    /// `x * y - y * x`.
    pub fn commutator(&self, rhs: &Self) -> Self {
        &(self * rhs) - &(rhs * self)
    }

    /// Whether `self * rhs == rhs * self`.
    pub fn commutes_with(&self, rhs: &Self) -> bool {
        self.commutator(rhs).is_zero()
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (r, c): (usize, usize)) -> &T {
        debug_assert!(r < self.rows && c < self.cols);
        &self.entries[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.entries[r * self.cols + c]
    }
}

// Operator sugar for internal use. Shapes are the caller's responsibility
// here; boundary code goes through the try_* variants.
impl<T: Scalar> Add for &Matrix<T> {
    type Output = Matrix<T>;

    fn add(self, rhs: Self) -> Matrix<T> {
        self.try_add(rhs).expect("matrix addition shape mismatch")
    }
}

impl<T: Scalar> Sub for &Matrix<T> {
    type Output = Matrix<T>;

    fn sub(self, rhs: Self) -> Matrix<T> {
        self.try_sub(rhs)
            .expect("matrix subtraction shape mismatch")
    }
}

impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;

    fn mul(self, rhs: Self) -> Matrix<T> {
        self.try_mul(rhs).expect("matrix product shape mismatch")
    }
}

impl<T: Scalar> Neg for &Matrix<T> {
    type Output = Matrix<T>;

    fn neg(self) -> Matrix<T> {
        self.map(|e| -e.clone())
    }
}

fn fmt_rows<T: Scalar>(m: &Matrix<T>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "[")?;
    for r in 0..m.rows() {
        if r > 0 {
            write!(f, "; ")?;
        }
        for c in 0..m.cols() {
            if c > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", m[(r, c)])?;
        }
    }
    write!(f, "]")
}

impl<T: Scalar> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} ", self.rows, self.cols)?;
        fmt_rows(self, f)
    }
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_rows(self, f)
    }
}
