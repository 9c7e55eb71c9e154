//! Exact linear algebra over the rationals for Drazin-style generalized
//! inverses.
//!
//! The crate decides, with no floating point anywhere, whether a square
//! rational matrix has a generalized n-strongly Drazin (gnsD) inverse,
//! produces the witness pair (inverse, idempotent) when it does, and
//! constructs the transfer certificate that carries such a witness from
//! `I - ab` to `I - ba`. Three independent checkers (Drazin witness,
//! spectral factor extraction, nilpotency of `A - A^(n+1)`) must agree on
//! every input, and a seeded instance generator drives fuzz campaigns
//! over structured matrices.
//!
//! Core math is generic over any exact field scalar via [`scalar::Scalar`];
//! the concrete instantiation used by the tools is the arbitrary-precision
//! rational [`Rat`], with [`RatMatrix`] and [`RatPoly`] as the working
//! aliases.

pub mod constrained;
pub mod drazin;
pub mod format;
pub mod gnsd;
pub mod instances;
pub mod jacobson;
mod linalg;
pub mod matrix;
pub mod poly;
pub mod scalar;

pub use linalg::{AffineSolution, NotInvertible};
pub use matrix::{LinAlgError, Matrix};
pub use poly::{Poly, PolyError};
pub use scalar::Scalar;

/// Arbitrary-precision rational scalar, always in lowest terms with a
/// positive denominator.
pub type Rat = num_rational::BigRational;

/// Dense rational matrix.
pub type RatMatrix = Matrix<Rat>;

/// Rational polynomial, coefficients of ascending degree.
pub type RatPoly = Poly<Rat>;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Rational `n / d`; panics on a zero denominator.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}
