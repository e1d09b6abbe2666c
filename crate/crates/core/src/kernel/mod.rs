//! Exact arithmetic values shared by every other module.
//!
//! Integers and rationals come from `num-bigint` / `num-rational`. The
//! polynomial, series and matrix types here are written against the small
//! [`Ring`] trait so that one routine (a recurrence, a determinant, a
//! series inversion) runs unchanged over integers, rationals and symbolic
//! bivariate polynomials in `(b, c)`.

mod bipoly;
mod matrix;
mod parity;
mod series;
pub(crate) mod unipoly;

pub use bipoly::{BiPoly, Monomial};
pub use matrix::Matrix;
pub use parity::{b_parity, basis_change, basis_change_uv, uvpoly_nonneg, Parity, ParityForm, UVPoly};
pub use series::{series_inv_sqrt, TruncSeries};
pub use unipoly::UniPoly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Integer = BigInt;
pub type Rational = BigRational;

/// A commutative ring with exact (partial) division.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn from_integer(n: Integer) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_integer(Integer::from(n))
    }

    /// The quotient `self / rhs` if it exists in the ring, `None` otherwise
    /// (including division by zero).
    fn div_exact(&self, rhs: &Self) -> Option<Self>;

    fn div_integer(&self, d: &Integer) -> Option<Self> {
        self.div_exact(&Self::from_integer(d.clone()))
    }
}

impl Ring for Integer {
    fn from_integer(n: Integer) -> Self {
        n
    }

    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(rhs);
        r.is_zero().then_some(q)
    }
}

impl Ring for Rational {
    fn from_integer(n: Integer) -> Self {
        Rational::from_integer(n)
    }

    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        (!rhs.is_zero()).then(|| self / rhs)
    }
}

/// `n!` for small `n` as an exact integer.
pub fn factorial(n: u64) -> Integer {
    (1..=n).fold(Integer::one(), |acc, k| acc * k)
}

/// Binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: u64) -> Integer {
    if k > n {
        return Integer::zero();
    }
    let k = k.min(n - k);
    let mut acc = Integer::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Integer power of a ring element by repeated squaring.
pub fn pow<R: Ring>(base: &R, mut exp: u64) -> R {
    let mut acc = R::one();
    let mut sq = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * &sq;
        }
        exp >>= 1;
        if exp > 0 {
            sq = sq.clone() * &sq;
        }
    }
    acc
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(Integer::from(num), Integer::from(den))
}

pub fn int(n: i64) -> Integer {
    Integer::from(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(8, 4), int(70));
        assert_eq!(binomial(3, 5), int(0));
        assert_eq!(binomial(0, 0), int(1));
        assert_eq!(factorial(6), int(720));
    }

    #[test]
    fn integer_exact_division() {
        assert_eq!(int(12).div_exact(&int(4)), Some(int(3)));
        assert_eq!(int(12).div_exact(&int(5)), None);
        assert_eq!(int(12).div_exact(&int(0)), None);
        assert_eq!(int(-12).div_exact(&int(4)), Some(int(-3)));
    }

    #[test]
    fn rationals_normalize() {
        let r = rational(6, -4);
        assert_eq!(r.numer(), &int(-3));
        assert_eq!(r.denom(), &int(2));
        assert_eq!(pow(&rational(2, 3), 3), rational(8, 27));
    }
}
