//! Univariate polynomials over an exact field.
//!
//! Coefficients are stored lowest degree first with no trailing zeros;
//! the zero polynomial has an empty coefficient vector. This module
//! carries the Euclidean toolkit (division, monic gcd) plus the
//! companion-matrix and cyclotomic-factor constructions used by the
//! spectral membership test and the instance generator.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::matrix::Matrix;
use crate::scalar::{from_i64, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomial division by the zero polynomial")]
    DivisionByZero,
}

/// Polynomial with coefficients of ascending degree.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    /// Build from coefficients (lowest degree first), trimming trailing zeros.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| from_i64(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The monomial x.
    pub fn x() -> Self {
        Self::new(vec![T::zero(), T::one()])
    }

    /// x^n - 1.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![T::zero(); n + 1];
        coeffs[0] = -T::one();
        coeffs[n] = T::one();
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Divide through by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lead) => {
                let lead = lead.clone();
                Self::new(
                    self.coeffs
                        .iter()
                        .map(|c| c.clone() / lead.clone())
                        .collect(),
                )
            }
        }
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    /// Evaluate at a square matrix by Horner's rule.
    pub fn eval_matrix(&self, m: &Matrix<T>) -> Matrix<T> {
        let dim = m.dim();
        let mut acc = Matrix::zero(dim, dim);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * m) + &Matrix::identity(dim).scale(c);
        }
        acc
    }

    /// Euclidean division: `self = q * g + r` with `deg r < deg g`.
    pub fn divmod(&self, g: &Self) -> Result<(Self, Self), PolyError> {
        if g.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let dg = g.coeffs.len() - 1;
        let lead = g.coeffs[dg].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dg {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quo = vec![T::zero(); rem.len() - dg];
        for i in (dg..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let factor = rem[i].clone() / lead.clone();
            quo[i - dg] = factor.clone();
            for (j, gc) in g.coeffs.iter().enumerate() {
                let delta = factor.clone() * gc.clone();
                rem[i - dg + j] = rem[i - dg + j].clone() - delta;
            }
        }
        Ok((Self::new(quo), Self::new(rem)))
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn exact_div(&self, g: &Self) -> Self {
        let (q, r) = self.divmod(g).expect("exact_div by zero polynomial");
        assert!(r.is_zero(), "exact_div left a nonzero remainder");
        q
    }

    /// Monic greatest common divisor via the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b).expect("nonzero divisor in gcd loop");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Companion matrix of a monic polynomial of degree >= 1.
    ///
    /// Ones on the subdiagonal, negated coefficients in the last column;
    /// its characteristic polynomial is the input.
    pub fn companion(&self) -> Matrix<T> {
        let monic = self.monic();
        let deg = monic.degree().expect("companion of the zero polynomial");
        assert!(deg >= 1, "companion requires degree >= 1");
        Matrix::from_fn(deg, deg, |r, c| {
            if c + 1 == deg {
                -monic.coeff(r)
            } else if r == c + 1 {
                T::one()
            } else {
                T::zero()
            }
        })
    }
}

/// Divisors of `n` in ascending order.
pub fn divisors(n: usize) -> Vec<usize> {
    let mut divs = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            divs.push(i);
            if i != n / i {
                divs.push(n / i);
            }
        }
        i += 1;
    }
    divs.sort_unstable();
    divs
}

/// The d-th cyclotomic polynomial, by recursive division of x^d - 1.
pub fn cyclotomic<T: Scalar>(d: usize) -> Poly<T> {
    assert!(d > 0, "cyclotomic index must be positive");
    let mut result = Poly::x_pow_minus_one(d);
    for e in divisors(d) {
        if e < d {
            result = result.exact_div(&cyclotomic(e));
        }
    }
    result
}

/// The irreducible rational factors of x^n - 1: all cyclotomics Phi_d with d | n.
pub fn unity_factors<T: Scalar>(n: usize) -> Vec<Poly<T>> {
    assert!(n > 0);
    divisors(n).into_iter().map(cyclotomic).collect()
}

impl<T: Scalar> Add for &Poly<T> {
    type Output = Poly<T>;

    fn add(self, rhs: Self) -> Poly<T> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Sub for &Poly<T> {
    type Output = Poly<T>;

    fn sub(self, rhs: Self) -> Poly<T> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Mul for &Poly<T> {
    type Output = Poly<T>;

    fn mul(self, rhs: Self) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a.clone() * b.clone();
            }
        }
        Poly::new(coeffs)
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;

    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Scalar> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<T: Scalar> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, RatPoly};

    fn p(coeffs: &[i64]) -> RatPoly {
        RatPoly::from_int_coeffs(coeffs)
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        assert_eq!(p(&[1, 2, 0, 0]), p(&[1, 2]));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[0]).degree(), None);
    }

    #[test]
    fn divmod_cubes() {
        // (x^3 - 1) / (x - 1) = x^2 + x + 1 remainder 0
        let (q, r) = p(&[-1, 0, 0, 1]).divmod(&p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[1, 1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn divmod_by_zero_rejected() {
        assert_eq!(
            p(&[1, 1]).divmod(&RatPoly::zero()),
            Err(PolyError::DivisionByZero)
        );
    }

    #[test]
    fn gcd_examples() {
        // gcd(x^2 - 1, x - 1) = x - 1
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 1])), p(&[-1, 1]));
        // gcd(x^2, x^3) = x^2
        assert_eq!(p(&[0, 0, 1]).gcd(&p(&[0, 0, 0, 1])), p(&[0, 0, 1]));
        // gcd is monic
        assert_eq!(p(&[0, 2]).gcd(&p(&[0, 4])), p(&[0, 1]));
    }

    #[test]
    fn companion_of_quadratic_cyclotomic() {
        let phi3: RatPoly = cyclotomic(3);
        assert_eq!(phi3, p(&[1, 1, 1]));
        let c = phi3.companion();
        assert_eq!(c, crate::RatMatrix::from_int_rows(&[&[0, -1], &[1, -1]]));
    }

    #[test]
    fn cyclotomic_table() {
        assert_eq!(cyclotomic::<crate::Rat>(1), p(&[-1, 1]));
        assert_eq!(cyclotomic::<crate::Rat>(2), p(&[1, 1]));
        assert_eq!(cyclotomic::<crate::Rat>(4), p(&[1, 0, 1]));
        assert_eq!(cyclotomic::<crate::Rat>(6), p(&[1, -1, 1]));
    }

    #[test]
    fn unity_factors_multiply_back() {
        for n in 1..=12usize {
            let product = unity_factors::<crate::Rat>(n)
                .iter()
                .fold(RatPoly::one(), |acc, f| &acc * f);
            assert_eq!(product, RatPoly::x_pow_minus_one(n), "n = {n}");
        }
    }

    #[test]
    fn eval_scalar_and_matrix_agree_on_diagonals() {
        let f = p(&[2, -3, 1]); // x^2 - 3x + 2
        assert_eq!(f.eval(&rat(1)), rat(0));
        assert_eq!(f.eval(&rat(5)), rat(12));
        let d = crate::RatMatrix::diagonal(&[rat(1), rat(5)]);
        let fd = f.eval_matrix(&d);
        assert_eq!(fd, crate::RatMatrix::diagonal(&[rat(0), rat(12)]));
    }
}
