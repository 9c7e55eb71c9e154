//! Scalar abstraction for exact field arithmetic.
//!
//! Everything in this crate is built on a field whose equality test is
//! exact: rank, nilpotency and idempotency are all decided by comparing
//! entries against zero, so an approximate scalar type would silently
//! change the meaning of every predicate. The canonical instantiation is
//! [`crate::Rat`] (arbitrary-precision rationals in lowest terms).

use std::fmt;

use num_traits::{FromPrimitive, Num, NumAssign, Signed};

/// A field scalar with exact equality.
///
/// The algorithms additionally assume characteristic zero: the
/// characteristic-polynomial recurrence divides by small integers, and
/// binomial coefficients are injected via [`from_i64`].
pub trait Scalar:
    Num + NumAssign + Signed + FromPrimitive + Clone + PartialEq + fmt::Debug + fmt::Display + 'static
{
}

impl<T> Scalar for T where
    T: Num
        + NumAssign
        + Signed
        + FromPrimitive
        + Clone
        + PartialEq
        + fmt::Debug
        + fmt::Display
        + 'static
{
}

/// Embed a small integer into the scalar field.
pub fn from_i64<T: Scalar>(n: i64) -> T {
    T::from_i64(n).expect("integer does not embed into the scalar field")
}

/// Binomial coefficient C(n, k) as a field element.
///
/// Computed multiplicatively inside the field; exact in characteristic 0.
pub fn binomial<T: Scalar>(n: usize, k: usize) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    let mut acc = T::one();
    for j in 0..k {
        acc = acc * from_i64::<T>((n - j) as i64) / from_i64::<T>((j + 1) as i64);
    }
    acc
}
