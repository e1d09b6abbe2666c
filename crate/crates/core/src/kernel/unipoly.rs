//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer as _;
use num_bigint::Sign;
use num_traits::{One, Signed, Zero};

use super::{Integer, Rational};

/// Coefficients lowest degree first; never carries a trailing zero, so the
/// zero polynomial has no coefficients and no degree.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_integers<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<Integer>,
    {
        Self::new(
            coeffs
                .into_iter()
                .map(|c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::from_integers([0, 1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `-1` standing in for the zero polynomial.
    pub fn degree_i64(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Sign of `f(x)` as -1, 0 or 1.
    pub fn sign_at(&self, x: &Rational) -> i8 {
        if self.coeffs.iter().all(Rational::is_integer) {
            let ints: Vec<Integer> = self.coeffs.iter().map(Rational::to_integer).collect();
            return sign_homogeneous(&ints, x.numer(), &denom_powers(x, ints.len()));
        }
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(Integer::from(k)))
                .collect(),
        )
    }

    pub fn scale(&self, k: &Rational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dd] / &lead;
            if !q.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &q * dc;
                }
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    pub fn rem(&self, divisor: &UniPoly) -> UniPoly {
        self.div_rem(divisor).1
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            Some(lead) => self.scale(&lead.recip()),
            None => UniPoly::zero(),
        }
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.primitive();
        }
        a.monic()
    }

    /// Positive rational multiple with coprime integer coefficients. The
    /// sign pattern of values is unchanged, which is all Sturm chains need.
    pub fn primitive(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let den_lcm = self
            .coeffs
            .iter()
            .fold(Integer::one(), |acc, c| acc.lcm(c.denom()));
        let nums: Vec<Integer> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den_lcm.clone())).to_integer())
            .collect();
        let g = nums
            .iter()
            .fold(Integer::zero(), |acc, n| acc.gcd(n));
        UniPoly::new(
            nums.into_iter()
                .map(|n| Rational::from_integer(n / &g))
                .collect(),
        )
    }

    /// `f / gcd(f, f')`, the polynomial with the same roots, each simple.
    pub fn squarefree_part(&self) -> UniPoly {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        self.div_rem(&g).0
    }

    /// Cauchy bound: every real root lies strictly inside `(-B, B)`.
    pub fn cauchy_bound(&self) -> Rational {
        let Some(lead) = self.leading() else {
            return Rational::one();
        };
        let lead = lead.abs();
        let max = self
            .coeffs
            .iter()
            .take(self.coeffs.len() - 1)
            .map(|c| c.abs() / &lead)
            .fold(Rational::zero(), |m, v| if v > m { v } else { m });
        max + Rational::one()
    }

    /// Rendering with float coefficients, for human-facing output only.
    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        use num_traits::ToPrimitive;
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }
}

impl Zero for UniPoly {
    fn zero() -> Self {
        UniPoly::default()
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for UniPoly {
    fn one() -> Self {
        UniPoly::from_integers([1])
    }
}

fn zip_with(a: &UniPoly, b: &UniPoly, f: impl Fn(&Rational, &Rational) -> Rational) -> UniPoly {
    let n = a.coeffs.len().max(b.coeffs.len());
    let zero = Rational::zero();
    UniPoly::new(
        (0..n)
            .map(|k| {
                f(
                    a.coeffs.get(k).unwrap_or(&zero),
                    b.coeffs.get(k).unwrap_or(&zero),
                )
            })
            .collect(),
    )
}

fn convolve(a: &UniPoly, b: &UniPoly) -> UniPoly {
    if a.is_zero() || b.is_zero() {
        return UniPoly::zero();
    }
    let mut out = vec![Rational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    UniPoly::new(out)
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $f:expr) => {
        impl $trait<&UniPoly> for &UniPoly {
            type Output = UniPoly;
            fn $method(self, rhs: &UniPoly) -> UniPoly {
                $f(self, rhs)
            }
        }
        impl $trait<UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $method(self, rhs: UniPoly) -> UniPoly {
                $f(&self, &rhs)
            }
        }
        impl $trait<&UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $method(self, rhs: &UniPoly) -> UniPoly {
                $f(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| zip_with(a, b, |x, y| x + y));
forward_binop!(Sub, sub, |a, b| zip_with(a, b, |x, y| x - y));
forward_binop!(Mul, mul, convolve);

impl Neg for UniPoly {
    type Output = UniPoly;

    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            let mag = c.abs();
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                if mag.is_integer() {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            match k {
                0 => {}
                1 if show_coeff => f.write_str("*x")?,
                1 => f.write_str("x")?,
                _ if show_coeff => write!(f, "*x^{k}")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

/// `q^0, q^1, ..., q^(len-1)` for `x = p/q`.
pub(crate) fn denom_powers(x: &Rational, len: usize) -> Vec<Integer> {
    let mut out = Vec::with_capacity(len);
    let mut acc = Integer::one();
    for _ in 0..len {
        out.push(acc.clone());
        acc *= x.denom();
    }
    out
}

/// Sign of `sum a_k p^k q^(d-k)`, which is the sign of `f(p/q)` for `q > 0`.
pub(crate) fn sign_homogeneous(coeffs: &[Integer], p: &Integer, q_pows: &[Integer]) -> i8 {
    let Some((lead, rest)) = coeffs.split_last() else {
        return 0;
    };
    let d = rest.len();
    let mut acc = lead.clone();
    for (k, a) in rest.iter().enumerate().rev() {
        acc = acc * p + a * &q_pows[d - k];
    }
    match acc.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_integers(c.iter().copied())
    }

    #[test]
    fn trims_and_degrees() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(p(&[0, 0]).degree(), None);
        assert_eq!(p(&[]).degree_i64(), -1);
    }

    #[test]
    fn division() {
        let f = p(&[-1, 0, 1]);
        let (q, r) = f.div_rem(&p(&[1, 1]));
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        let (q, r) = p(&[1, 2, 6]).div_rem(&p(&[1, 2]));
        assert_eq!(&(&q * &p(&[1, 2])) + &r, p(&[1, 2, 6]));
        assert!(r.degree_i64() < 1);
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = p(&[1, 1]) * p(&[1, 1]) * p(&[-2, 1]);
        assert_eq!(a.gcd(&a.derivative()), p(&[1, 1]));
        assert_eq!(a.squarefree_part().monic(), (p(&[1, 1]) * p(&[-2, 1])).monic());
        assert_eq!(p(&[1, 1]).gcd(&p(&[2, 1])), UniPoly::one());
    }

    #[test]
    fn primitive_keeps_sign() {
        let f = UniPoly::new(vec![rational(-1, 2), rational(3, 4)]);
        assert_eq!(f.primitive(), p(&[-2, 3]));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 12, 6]).to_string(), "6*x^2 + 12*x + 1");
        assert_eq!(p(&[-1, 0, 1]).to_string(), "x^2 - 1");
        assert_eq!(UniPoly::new(vec![rational(1, 2)]).to_string(), "(1/2)");
    }
}
