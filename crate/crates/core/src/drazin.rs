//! Drazin inverse via the core-nilpotent decomposition.
//!
//! For a square matrix A of index k, the space splits as
//! col(A^k) (+) null(A^k); restricted to the first summand A is
//! invertible, on the second it is nilpotent. Stacking bases of the two
//! summands into a change-of-basis matrix S gives
//! `S^-1 A S = blockdiag(C, N)` with C invertible and N nilpotent, and
//! the Drazin inverse is `S blockdiag(C^-1, 0) S^-1`. One exact inversion
//! produces the inverse, the index and both spectral projections.

use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Similarity `S^-1 A S = blockdiag(core, nil)` with `core` invertible
/// and `nil` nilpotent; `index` is the Drazin index of A.
#[derive(Debug, Clone)]
pub struct CoreNilpotentDecomposition<T: Scalar> {
    pub index: usize,
    pub basis: Matrix<T>,
    pub basis_inv: Matrix<T>,
    pub core: Matrix<T>,
    pub nil: Matrix<T>,
}

impl<T: Scalar> CoreNilpotentDecomposition<T> {
    pub fn core_dim(&self) -> usize {
        self.core.rows()
    }

    /// `S blockdiag(core, nil) S^-1`, which must equal the original matrix.
    pub fn reconstruct(&self) -> Matrix<T> {
        let block = Matrix::block_diag(&[&self.core, &self.nil]);
        &(&self.basis * &block) * &self.basis_inv
    }
}

/// Smallest i >= 0 with rank(A^i) = rank(A^(i+1)); zero iff A is invertible.
pub fn drazin_index<T: Scalar>(a: &Matrix<T>) -> usize {
    let dim = a.dim();
    let mut previous_rank = dim; // rank of A^0
    let mut power = a.clone();
    for i in 1..=dim {
        let rank = power.rank();
        if rank == previous_rank {
            return i - 1;
        }
        previous_rank = rank;
        power = &power * a;
    }
    // Ranks strictly decreased through A^dim; they stabilize from here.
    dim
}

/// Core-nilpotent decomposition; exists for every square matrix.
pub fn core_nilpotent<T: Scalar>(a: &Matrix<T>) -> CoreNilpotentDecomposition<T> {
    let dim = a.dim();
    let index = drazin_index(a);
    let stabilized = a.pow(index);
    let mut columns = stabilized.column_space_basis();
    let core_dim = columns.len();
    columns.extend(stabilized.null_space_basis());
    debug_assert_eq!(
        columns.len(),
        dim,
        "col(A^k) and null(A^k) must be complementary"
    );

    let basis = Matrix::from_fn(dim, dim, |r, c| columns[c][(r, 0)].clone());
    let basis_inv = basis
        .inverse()
        .expect("stacked column/null bases form an invertible matrix");
    let similar = &(&basis_inv * a) * &basis;

    let core = similar.submatrix(0, core_dim, 0, core_dim);
    let nil = similar.submatrix(core_dim, dim, core_dim, dim);
    debug_assert!(similar.submatrix(0, core_dim, core_dim, dim).is_zero());
    debug_assert!(similar.submatrix(core_dim, dim, 0, core_dim).is_zero());

    CoreNilpotentDecomposition {
        index,
        basis,
        basis_inv,
        core,
        nil,
    }
}

/// The Drazin inverse `S blockdiag(C^-1, 0) S^-1`.
///
/// Satisfies X A X = X, A X = X A, A^(k+1) X = A^k for k the index, and
/// A - A^2 X is nilpotent.
pub fn drazin_inverse<T: Scalar>(a: &Matrix<T>) -> Matrix<T> {
    let dec = core_nilpotent(a);
    let nil_dim = a.dim() - dec.core_dim();
    let core_inv = dec
        .core
        .inverse()
        .expect("core block of the decomposition is invertible");
    let block = Matrix::block_diag(&[&core_inv, &Matrix::zero(nil_dim, nil_dim)]);
    &(&dec.basis * &block) * &dec.basis_inv
}

/// The projection e = A A^D onto the core part of A along its generalized
/// nullspace. Idempotent, commutes with A, and A(I - e) is nilpotent.
pub fn spectral_idempotent<T: Scalar>(a: &Matrix<T>) -> Matrix<T> {
    a * &drazin_inverse(a)
}

/// The projection onto the generalized eigenspace of A at eigenvalue 1,
/// computed as `I - B B^D` for B = I - A.
///
/// Always defined; when every eigenvalue of A lies in {0, 1} the
/// difference A - p is additionally nilpotent.
pub fn spectral_idempotent_at_one<T: Scalar>(a: &Matrix<T>) -> Matrix<T> {
    let identity = Matrix::identity(a.dim());
    let b = &identity - a;
    &identity - &spectral_idempotent(&b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio, RatMatrix};

    fn jordan(dim: usize) -> RatMatrix {
        RatMatrix::from_fn(dim, dim, |r, c| if c == r + 1 { rat(1) } else { rat(0) })
    }

    #[test]
    fn index_of_identity_is_zero() {
        assert_eq!(drazin_index(&RatMatrix::identity(3)), 0);
    }

    #[test]
    fn index_of_jordan_block_is_its_size() {
        assert_eq!(drazin_index(&jordan(2)), 2);
        assert_eq!(drazin_index(&jordan(4)), 4);
    }

    #[test]
    fn index_of_singular_diagonal_is_one() {
        assert_eq!(drazin_index(&RatMatrix::diagonal(&[rat(2), rat(0)])), 1);
    }

    #[test]
    fn decomposition_of_singular_diagonal() {
        let a = RatMatrix::diagonal(&[rat(2), rat(0)]);
        let dec = core_nilpotent(&a);
        assert_eq!(dec.index, 1);
        assert_eq!(dec.core, RatMatrix::from_int_rows(&[&[2]]));
        assert_eq!(dec.nil, RatMatrix::from_int_rows(&[&[0]]));
        assert_eq!(dec.reconstruct(), a);
    }

    #[test]
    fn decomposition_of_block_diagonal_input() {
        let a = RatMatrix::block_diag(&[&RatMatrix::identity(1), &jordan(2)]);
        let dec = core_nilpotent(&a);
        assert_eq!(dec.index, 2);
        assert_eq!(dec.core, RatMatrix::identity(1));
        // nil is similar to the 2x2 Jordan block: nonzero but square-zero.
        assert!(!dec.nil.is_zero());
        assert!(dec.nil.pow(2).is_zero());
        assert_eq!(dec.reconstruct(), a);
    }

    #[test]
    fn decomposition_recovers_conjugated_core() {
        // A = S blockdiag(companion(x^2+x+1), J_2(0)) S^-1 for a fixed
        // unimodular S; the recovered core must again have x^2+x+1 as its
        // characteristic polynomial.
        let companion = crate::poly::cyclotomic::<crate::Rat>(3).companion();
        let block = RatMatrix::block_diag(&[&companion, &jordan(2)]);
        let s = RatMatrix::from_int_rows(&[
            &[1, 2, 0, -1],
            &[0, 1, 3, 0],
            &[0, 0, 1, 2],
            &[0, 0, 0, 1],
        ]);
        let a = &(&s * &block) * &s.inverse().unwrap();
        let dec = core_nilpotent(&a);
        assert_eq!(dec.index, 2);
        assert_eq!(dec.core.char_poly(), crate::poly::cyclotomic(3));
        assert_eq!(dec.reconstruct(), a);
    }

    #[test]
    fn drazin_inverse_of_identity() {
        assert_eq!(
            drazin_inverse(&RatMatrix::identity(2)),
            RatMatrix::identity(2)
        );
    }

    #[test]
    fn drazin_inverse_of_nilpotent_is_zero() {
        assert!(drazin_inverse(&jordan(2)).is_zero());
    }

    #[test]
    fn drazin_inverse_of_invertible_plus_zero_block() {
        let a = RatMatrix::diagonal(&[rat(2), rat(0)]);
        assert_eq!(
            drazin_inverse(&a),
            RatMatrix::diagonal(&[ratio(1, 2), rat(0)])
        );
    }

    #[test]
    fn drazin_axioms_on_fixed_matrices() {
        let samples = [
            RatMatrix::from_int_rows(&[&[1, 1, 0], &[0, 0, 1], &[0, 0, 0]]),
            RatMatrix::from_int_rows(&[&[2, 1], &[1, 1]]),
            RatMatrix::from_int_rows(&[&[0, 1, 2], &[0, 0, 3], &[0, 0, 0]]),
            RatMatrix::diagonal(&[rat(3), rat(0), rat(-1)]),
        ];
        for a in &samples {
            let x = drazin_inverse(a);
            let k = drazin_index(a);
            assert_eq!(&(&x * a) * &x, x, "X A X = X for {a}");
            assert_eq!(a * &x, &x * a, "A X = X A for {a}");
            assert_eq!(&a.pow(k + 1) * &x, a.pow(k), "A^(k+1) X = A^k for {a}");
            assert!(
                (a - &(&(a * a) * &x)).is_nilpotent(),
                "A - A^2 X nilpotent for {a}"
            );
        }
    }

    #[test]
    fn spectral_idempotent_trivial_cases() {
        assert_eq!(
            spectral_idempotent(&RatMatrix::identity(3)),
            RatMatrix::identity(3)
        );
        assert!(spectral_idempotent(&jordan(2)).is_zero());
    }

    #[test]
    fn spectral_idempotent_splits_core_from_nilpotent_part() {
        // diag(1,1,0) plus a strictly upper coupling into the kernel.
        let mut a = RatMatrix::diagonal(&[rat(1), rat(1), rat(0)]);
        a[(0, 2)] = rat(1);
        let e = spectral_idempotent(&a);
        assert_eq!(&e * &e, e, "idempotent");
        assert_eq!(&a * &e, &e * &a, "commutes with A");
        let defect = &a - &(&a * &e);
        assert!(defect.is_nilpotent(), "A(I - e) nilpotent");
        assert_eq!(e.rank(), 2, "core part has rank 2");
    }

    #[test]
    fn idempotent_at_one_trivial_cases() {
        assert_eq!(
            spectral_idempotent_at_one(&RatMatrix::identity(2)),
            RatMatrix::identity(2)
        );
        assert!(spectral_idempotent_at_one(&RatMatrix::zero(2, 2)).is_zero());
    }

    #[test]
    fn idempotent_at_one_on_zero_one_spectrum() {
        // Upper triangular with diagonal (0,1,1,1): all eigenvalues in {0,1},
        // so A - p must be nilpotent.
        let a = RatMatrix::from_int_rows(&[
            &[0, -1, -1, -1],
            &[0, 1, 0, -1],
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
        ]);
        let p = spectral_idempotent_at_one(&a);
        assert_eq!(&p * &p, p);
        assert_eq!(&p * &a, &a * &p);
        let defect = &a - &p;
        assert!(defect.pow(4).is_zero(), "(A - p)^4 = 0");
    }
}
