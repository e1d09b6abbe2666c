//! Truncated formal power series `a_0 + a_1 x + ... + a_N x^N + O(x^{N+1})`.

use std::fmt;

use super::{Integer, Ring};
use crate::error::{Error, Result};

/// Every coefficient up to and including `order` is exact.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncSeries<R> {
    order: usize,
    coeffs: Vec<R>,
}

impl<R: Ring> TruncSeries<R> {
    /// Pads with zeros or drops coefficients beyond `order`.
    pub fn new(mut coeffs: Vec<R>, order: usize) -> Self {
        coeffs.resize(order + 1, R::zero());
        TruncSeries { order, coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> R) -> Self {
        TruncSeries {
            order,
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![R::one()], order)
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// Coefficient of `x^k`; `None` past the truncation order.
    pub fn coeff(&self, k: usize) -> Option<&R> {
        self.coeffs.get(k)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order)].to_vec(), order.min(self.order))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order.min(rhs.order);
        Self::from_fn(order, |k| self.coeffs[k].clone() + &rhs.coeffs[k])
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let order = self.order.min(rhs.order);
        Self::from_fn(order, |k| self.coeffs[k].clone() - &rhs.coeffs[k])
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order.min(rhs.order);
        let mut out = vec![R::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(order + 1 - i).enumerate() {
                out[i + j] = std::mem::replace(&mut out[i + j], R::zero()) + a.clone() * b;
            }
        }
        TruncSeries { order, coeffs: out }
    }

    pub fn scale(&self, k: &R) -> Self {
        Self::from_fn(self.order, |i| self.coeffs[i].clone() * k)
    }

    /// `x * self`, keeping the same order.
    pub fn shift_x(&self) -> Self {
        Self::from_fn(self.order, |k| {
            if k == 0 {
                R::zero()
            } else {
                self.coeffs[k - 1].clone()
            }
        })
    }

    pub fn pow(&self, exp: usize) -> Self {
        let mut acc = Self::one(self.order);
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse. Requires the constant term to be a unit of
    /// the coefficient ring.
    pub fn inverse(&self) -> Result<Self> {
        let inv0 = R::one()
            .div_exact(&self.coeffs[0])
            .ok_or(Error::InexactDivision)?;
        let mut out: Vec<R> = Vec::with_capacity(self.order + 1);
        out.push(inv0.clone());
        for n in 1..=self.order {
            let mut acc = R::zero();
            for k in 1..=n {
                acc = acc + self.coeffs[k].clone() * &out[n - k];
            }
            out.push(-(acc * &inv0));
        }
        Ok(TruncSeries {
            order: self.order,
            coeffs: out,
        })
    }

    /// `self(inner(x))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::InvalidArgument(
                "inner series of a composition must vanish at 0".into(),
            ));
        }
        let order = self.order.min(inner.order);
        let inner = inner.truncate(order);
        let mut acc = Self::new(vec![self.coeffs[order].clone()], order);
        for k in (0..order).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] = acc.coeffs[0].clone() + &self.coeffs[k];
        }
        Ok(acc)
    }
}

/// `p^{-1/2}` for a series with constant term exactly 1.
///
/// Uses `2 p s' = -p' s`, which gives `2 n s_n = sum_{k=1}^{n} (k - 2n) p_k s_{n-k}`.
/// The division by `2n` must be exact in the coefficient ring.
pub fn series_inv_sqrt<R: Ring>(p: &TruncSeries<R>, order: usize) -> Result<TruncSeries<R>> {
    if !p.coeffs[0].is_one() {
        return Err(Error::NonUnitConstant);
    }
    let p = TruncSeries::new(p.coeffs.clone(), order);
    let mut s: Vec<R> = Vec::with_capacity(order + 1);
    s.push(R::one());
    for n in 1..=order {
        let mut acc = R::zero();
        for k in 1..=n {
            let w = R::from_i64(k as i64 - 2 * n as i64);
            acc = acc + w * &p.coeffs[k] * &s[n - k];
        }
        let next = acc
            .div_integer(&Integer::from(2 * n))
            .ok_or(Error::InexactDivision)?;
        s.push(next);
    }
    Ok(TruncSeries { order, coeffs: s })
}

impl<R: Ring> fmt::Display for TruncSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match k {
                0 => write!(f, "({c}) + ")?,
                1 => write!(f, "({c})*x + ")?,
                _ => write!(f, "({c})*x^{k} + ")?,
            }
        }
        write!(f, "O(x^{})", self.order + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{int, BiPoly, Rational};
    use num_traits::One;

    fn ints(v: &[i64], order: usize) -> TruncSeries<Integer> {
        TruncSeries::new(v.iter().map(|&x| int(x)).collect(), order)
    }

    #[test]
    fn inv_sqrt_identity() {
        let s = series_inv_sqrt(&ints(&[1], 5), 5).unwrap();
        assert_eq!(s, ints(&[1], 5));
    }

    #[test]
    fn inv_sqrt_central_trinomial() {
        let s = series_inv_sqrt(&ints(&[1, -2, -3], 5), 5).unwrap();
        assert_eq!(s, ints(&[1, 1, 3, 7, 19, 51], 5));
    }

    #[test]
    fn inv_sqrt_symbolic() {
        let b = BiPoly::b();
        let c = BiPoly::c();
        let p = TruncSeries::new(
            vec![
                BiPoly::one(),
                b.scale(&int(-2)),
                &b * &b - c.scale(&int(4)),
            ],
            3,
        );
        let s = series_inv_sqrt(&p, 3).unwrap();
        assert_eq!(s.coeffs()[2], BiPoly::from_terms([(2, 0, 1), (0, 1, 2)]));
        assert_eq!(s.coeffs()[3], BiPoly::from_terms([(3, 0, 1), (1, 1, 6)]));
    }

    #[test]
    fn inv_sqrt_rejects_non_unit() {
        assert_eq!(
            series_inv_sqrt(&ints(&[2, 1], 3), 3),
            Err(Error::NonUnitConstant)
        );
    }

    #[test]
    fn inv_sqrt_non_integral_coefficient() {
        // (1 + x)^{-1/2} = 1 - x/2 + ...
        assert_eq!(
            series_inv_sqrt(&ints(&[1, 1], 2), 2),
            Err(Error::InexactDivision)
        );
        let q = TruncSeries::new(vec![Rational::one(), Rational::one()], 2);
        let s = series_inv_sqrt(&q, 2).unwrap();
        assert_eq!(s.coeffs()[1], crate::kernel::rational(-1, 2));
    }

    #[test]
    fn composition_and_inverse() {
        // 1/(1-x) composed with x/(1-x) ... check against the inverse route.
        let geo = ints(&[1, 1, 1, 1, 1, 1], 5);
        let one_minus_x = ints(&[1, -1], 5);
        assert_eq!(one_minus_x.inverse().unwrap(), geo);
        let x = ints(&[0, 1], 5);
        assert_eq!(geo.compose(&x).unwrap(), geo);
        let two_x = ints(&[0, 2], 5);
        assert_eq!(geo.compose(&two_x).unwrap(), ints(&[1, 2, 4, 8, 16, 32], 5));
        assert!(geo.compose(&geo).is_err());
    }

    #[test]
    fn mixed_orders_truncate() {
        let a = ints(&[1, 1], 3);
        let b = ints(&[1, 1], 5);
        assert_eq!(a.mul(&b).order(), 3);
        assert_eq!(a.mul(&b), ints(&[1, 2, 1], 3));
    }
}
