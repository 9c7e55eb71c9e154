//! Generalized n-strongly Drazin invertibility, decided three ways.
//!
//! A square matrix A has a gnsD inverse for a given n exactly when its
//! nonzero eigenvalues are all n-th roots of unity. The three deciders
//! here take independent routes to that condition:
//!
//! * [`gnsd_check`] builds the candidate witness (x, e) from the Drazin
//!   inverse and tests nilpotency of `A^n - e` directly;
//! * [`gnsd_check_spectral`] strips the power-of-x part off the
//!   characteristic polynomial and checks that every remaining
//!   irreducible factor divides `x^n - 1`, by repeated gcd extraction;
//! * [`gnsd_check_poly`] tests nilpotency of `A - A^(n+1)`.
//!
//! Agreement of the three on every input is itself part of the
//! acceptance suite; a disagreement signals an implementation bug, never
//! a property of the input.

use thiserror::Error;

use crate::drazin::{drazin_inverse, spectral_idempotent};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::scalar::Scalar;

/// A verified witness of generalized n-strongly Drazin invertibility.
///
/// Invariants (all exact): `e^2 = e`, `x A x = x`, `A x = x A = e`, and
/// `(A^n - e)^nilpotency_degree = 0`.
#[derive(Debug, Clone)]
pub struct GnsdWitness<T: Scalar> {
    pub inverse: Matrix<T>,
    pub idempotent: Matrix<T>,
    pub n: usize,
    /// Smallest m with `(A^n - e)^m = 0`.
    pub nilpotency_degree: usize,
}

/// Refutation: the defect `A^n - e` is not nilpotent, certified by its
/// nonvanishing `dim`-th power.
#[derive(Debug, Clone, Error)]
#[error("matrix has no generalized {n}-strongly Drazin inverse: (A^n - e)^{power} is nonzero")]
pub struct NotGnsd<T: Scalar> {
    pub n: usize,
    /// The exponent of the certificate power (the matrix dimension).
    pub power: usize,
    /// The nonzero matrix `(A^n - e)^power`.
    pub evidence: Matrix<T>,
}

/// Witness-based decider: returns the witness built from the Drazin
/// inverse, or a refutation certificate.
pub fn gnsd_check<T: Scalar>(a: &Matrix<T>, n: usize) -> Result<GnsdWitness<T>, NotGnsd<T>> {
    assert!(n >= 1, "gnsd_check requires n >= 1");
    let dim = a.dim();
    let idempotent = spectral_idempotent(a);
    let defect = &a.pow(n) - &idempotent;

    let mut power = Matrix::identity(dim);
    for degree in 1..=dim {
        power = &power * &defect;
        if power.is_zero() {
            return Ok(GnsdWitness {
                inverse: drazin_inverse(a),
                idempotent,
                n,
                nilpotency_degree: degree,
            });
        }
    }
    Err(NotGnsd {
        n,
        power: dim,
        evidence: power,
    })
}

/// Spectral decider: write char(A) = x^m g(x) with g(0) != 0; accept iff
/// every irreducible factor of g divides x^n - 1.
///
/// Repeatedly divides g by gcd(g, x^n - 1); the factors of g divide
/// x^n - 1 exactly when this terminates at a constant with every
/// extracted gcd nonconstant.
pub fn gnsd_check_spectral<T: Scalar>(a: &Matrix<T>, n: usize) -> bool {
    assert!(n >= 1, "gnsd_check_spectral requires n >= 1");
    let char_poly = a.char_poly();
    // Strip the power of x: drop low zero coefficients.
    let zeros = char_poly
        .coeffs()
        .iter()
        .take_while(|c| c.is_zero())
        .count();
    let mut g = Poly::new(char_poly.coeffs()[zeros..].to_vec());
    let unity = Poly::x_pow_minus_one(n);
    while !g.is_constant() {
        let h = g.gcd(&unity);
        if h.is_constant() {
            return false;
        }
        g = g.exact_div(&h);
    }
    true
}

/// Polynomial decider: nilpotency of `A - A^(n+1)`.
///
/// Eigenvalues of that difference are l - l^(n+1) over the eigenvalues l
/// of A, so it vanishes nilpotently exactly when every l is 0 or an n-th
/// root of unity.
pub fn gnsd_check_poly<T: Scalar>(a: &Matrix<T>, n: usize) -> bool {
    assert!(n >= 1, "gnsd_check_poly requires n >= 1");
    (a - &a.pow(n + 1)).is_nilpotent()
}

/// Generalized strongly Drazin invertibility: the n = 1 case.
pub fn gsd_check<T: Scalar>(a: &Matrix<T>) -> bool {
    gnsd_check(a, 1).is_ok()
}
