//! Rewriting parity-homogeneous polynomials in the basis `u = b^2 - m c`,
//! `v = c`.
//!
//! A polynomial `P(b, c)` whose `b`-exponents are all even can be written
//! uniquely as `Q(b^2 - m c, c)`; if they are all odd, as `b Q(b^2 - m c, c)`.
//! With `m = 2` this is the form in which Hankel 2x2 minors of `T_n(b, c)`
//! have nonnegative coefficients; `m = 1` serves the Motzkin numbers.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::bipoly::{fmt_terms, TermsWire};
use super::{BiPoly, Integer, Monomial};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: u64) -> Parity {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Polynomial in `u` and `v`, stored like a [`BiPoly`] with `u` in the
/// first exponent slot and `v` in the second.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UVPoly(BiPoly);

impl UVPoly {
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, C)>,
        C: Into<Integer>,
    {
        UVPoly(BiPoly::from_terms(terms))
    }

    pub fn zero() -> Self {
        UVPoly::default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Terms as `(u_exp, v_exp, coeff)`, ascending graded-lex.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Integer)> + '_ {
        self.0.terms().map(|(m, c)| (m.b, m.c, c))
    }

    pub fn coeff(&self, u_exp: u32, v_exp: u32) -> Integer {
        self.0.coeff(u_exp, v_exp)
    }

    pub fn as_bipoly(&self) -> &BiPoly {
        &self.0
    }

    /// `Q(b^2 - m c, c)` as a polynomial in `(b, c)`.
    pub fn substitute(&self, m: u32) -> BiPoly {
        let u = BiPoly::from_terms([(2, 0, 1), (0, 1, -(m as i64))]);
        let mut out = BiPoly::zero();
        for (i, j, coeff) in self.terms() {
            out = out
                + super::pow(&u, i as u64)
                    .mul_monomial(Monomial::new(0, j), coeff);
        }
        out
    }
}

impl fmt::Display for UVPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.0.raw_terms(), ("u", "v"))
    }
}

impl fmt::Debug for UVPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UVPoly({self})")
    }
}

impl Serialize for UVPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        TermsWire::from_map(self.0.raw_terms()).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for UVPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = TermsWire::deserialize(deserializer)?;
        Ok(UVPoly(BiPoly::from_raw(wire.into_map::<D::Error>()?)))
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ParityForm {
    pub parity: Parity,
    pub poly: UVPoly,
}

impl ParityForm {
    /// The original `(b, c)` polynomial, for `b^2 = u + m v`.
    pub fn reconstruct(&self, m: u32) -> BiPoly {
        let q = self.poly.substitute(m);
        match self.parity {
            Parity::Even => q,
            Parity::Odd => q * BiPoly::b(),
        }
    }
}

/// Common parity of the `b`-exponents, `None` when they are mixed. The zero
/// polynomial counts as even.
pub fn b_parity(p: &BiPoly) -> Option<Parity> {
    let mut parity = None;
    for (m, _) in p.terms() {
        let this = Parity::of(m.b as u64);
        match parity {
            None => parity = Some(this),
            Some(prev) if prev != this => return None,
            _ => {}
        }
    }
    Some(parity.unwrap_or(Parity::Even))
}

/// Rewrites `p` using `b^2 = u + m v`, `c = v`.
pub fn basis_change(p: &BiPoly, m: u32) -> Result<ParityForm> {
    let parity = b_parity(p).ok_or(Error::NotParityHomogeneous)?;
    let shift = match parity {
        Parity::Even => 0,
        Parity::Odd => 1,
    };
    // (u + m v)^k, built on demand
    let b_squared = BiPoly::from_terms([(1, 0, 1), (0, 1, m as i64)]);
    let mut powers = vec![BiPoly::from(1)];
    let mut out = BiPoly::zero();
    for (mono, coeff) in p.terms() {
        debug_assert!(mono.b >= shift);
        let k = ((mono.b - shift) / 2) as usize;
        while powers.len() <= k {
            let next = powers.last().unwrap() * &b_squared;
            powers.push(next);
        }
        out = out + powers[k].mul_monomial(Monomial::new(0, mono.c), coeff);
    }
    Ok(ParityForm {
        parity,
        poly: UVPoly(out),
    })
}

/// [`basis_change`] with `u = b^2 - 2c`.
pub fn basis_change_uv(p: &BiPoly) -> Result<ParityForm> {
    basis_change(p, 2)
}

/// Every stored coefficient is a nonnegative integer.
pub fn uvpoly_nonneg(q: &UVPoly) -> bool {
    q.terms().all(|(_, _, c)| !c.is_negative())
}
