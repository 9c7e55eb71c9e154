//! Exact Gaussian elimination and the predicates built on it.
//!
//! Everything here reduces to row reduction with exact rational pivots:
//! rank, inverses, null/column space bases, general affine solves, the
//! commutant of a matrix, and the characteristic polynomial (computed by
//! the Faddeev-LeVerrier trace recurrence, which stays exact over any
//! field of characteristic zero).

use thiserror::Error;

use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::scalar::{from_i64, Scalar};

/// Returned by [`Matrix::inverse`] on singular input; carries the rank as
/// the refutation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("matrix is not invertible (rank {rank})")]
pub struct NotInvertible {
    pub rank: usize,
}

/// A solution set of a consistent linear system: one particular solution
/// plus a basis of the homogeneous kernel.
#[derive(Debug, Clone)]
pub struct AffineSolution<T: Scalar> {
    pub particular: Matrix<T>,
    pub kernel_basis: Vec<Matrix<T>>,
}

impl<T: Scalar> Matrix<T> {
    /// Reduced row echelon form together with the pivot columns.
    pub fn rref_with_pivots(&self) -> (Self, Vec<usize>) {
        let mut a = self.clone();
        let (rows, cols) = (a.rows(), a.cols());
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..cols {
            if pivot_row >= rows {
                break;
            }
            let Some(src) = (pivot_row..rows).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            if src != pivot_row {
                for j in 0..cols {
                    let tmp = a[(src, j)].clone();
                    a[(src, j)] = a[(pivot_row, j)].clone();
                    a[(pivot_row, j)] = tmp;
                }
            }
            let pivot = a[(pivot_row, col)].clone();
            if !pivot.is_one() {
                for j in col..cols {
                    if !a[(pivot_row, j)].is_zero() {
                        a[(pivot_row, j)] = a[(pivot_row, j)].clone() / pivot.clone();
                    }
                }
            }
            for r in 0..rows {
                if r == pivot_row || a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone();
                for j in col..cols {
                    let delta = factor.clone() * a[(pivot_row, j)].clone();
                    a[(r, j)] = a[(r, j)].clone() - delta;
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (a, pivots)
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Self {
        self.rref_with_pivots().0
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    /// Exact inverse, or the rank as a refutation certificate.
    pub fn inverse(&self) -> Result<Self, NotInvertible> {
        let n = self.dim();
        let augmented = self.hstack(&Self::identity(n));
        let (r, pivots) = augmented.rref_with_pivots();
        // The left block is invertible iff its n columns are all pivots.
        if pivots.len() < n || pivots.iter().take_while(|&&c| c < n).count() < n {
            return Err(NotInvertible { rank: self.rank() });
        }
        Ok(r.submatrix(0, n, n, 2 * n))
    }

    /// Basis of the kernel, as `cols x 1` column vectors.
    pub fn null_space_basis(&self) -> Vec<Self> {
        let cols = self.cols();
        let (r, pivots) = self.rref_with_pivots();
        let mut pivot_of_col = vec![None; cols];
        for (row, &col) in pivots.iter().enumerate() {
            pivot_of_col[col] = Some(row);
        }
        let mut basis = Vec::new();
        for free in 0..cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = Self::zero(cols, 1);
            v[(free, 0)] = T::one();
            for (col, slot) in pivot_of_col.iter().enumerate() {
                if let Some(row) = slot {
                    v[(col, 0)] = -r[(*row, free)].clone();
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of the column space: the original columns at pivot positions.
    pub fn column_space_basis(&self) -> Vec<Self> {
        let (_, pivots) = self.rref_with_pivots();
        pivots.into_iter().map(|c| self.column(c)).collect()
    }

    /// Solve `self * x = rhs` for a single column vector `rhs`.
    ///
    /// Returns `None` when the system is inconsistent, otherwise a
    /// particular solution with a kernel basis describing all solutions.
    pub fn solve_affine(&self, rhs: &Self) -> Option<AffineSolution<T>> {
        assert_eq!(rhs.cols(), 1, "solve_affine expects a column vector");
        assert_eq!(rhs.rows(), self.rows(), "solve_affine shape mismatch");
        let cols = self.cols();
        let augmented = self.hstack(rhs);
        let (r, pivots) = augmented.rref_with_pivots();
        if pivots.last().is_some_and(|&c| c == cols) {
            return None;
        }
        let mut particular = Self::zero(cols, 1);
        for (row, &col) in pivots.iter().enumerate() {
            particular[(col, 0)] = r[(row, cols)].clone();
        }
        Some(AffineSolution {
            particular,
            kernel_basis: self.null_space_basis(),
        })
    }

    /// Characteristic polynomial det(xI - A), monic of degree `dim`.
    pub fn char_poly(&self) -> Poly<T> {
        let n = self.dim();
        // Faddeev-LeVerrier: c[n] = 1, M_0 = I,
        //   c[n-i] = -tr(A M_{i-1}) / i,  M_i = A M_{i-1} + c[n-i] I.
        let mut coeffs = vec![T::zero(); n + 1];
        coeffs[n] = T::one();
        let mut m = Self::identity(n);
        for i in 1..=n {
            let am = self * &m;
            let c = -(am.trace() / from_i64::<T>(i as i64));
            coeffs[n - i] = c.clone();
            m = &am + &Self::identity(n).scale(&c);
        }
        Poly::new(coeffs)
    }

    /// Basis of the commutant algebra {Y : XY = YX}.
    ///
    /// Sets up the k^2 x k^2 linear system XY - YX = 0 in the entries of Y
    /// and reads the kernel back as matrices. For a single matrix over a
    /// field the commutant always has dimension >= k.
    pub fn commutant_basis(&self) -> Vec<Self> {
        let k = self.dim();
        let unknowns = k * k;
        // Equation (i,j): sum_l X[i,l] Y[l,j] - Y[i,l] X[l,j] = 0.
        let system = Self::from_fn(unknowns, unknowns, |eq, unk| {
            let (i, j) = (eq / k, eq % k);
            let (l, m) = (unk / k, unk % k);
            let mut coeff = T::zero();
            if m == j {
                coeff += self[(i, l)].clone();
            }
            if l == i {
                coeff -= self[(m, j)].clone();
            }
            coeff
        });
        system
            .null_space_basis()
            .into_iter()
            .map(|v| Self::from_fn(k, k, |r, c| v[(r * k + c, 0)].clone()))
            .collect()
    }
}
