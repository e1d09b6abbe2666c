//! Sparse bivariate polynomials in `(b, c)` with arbitrary precision
//! integer coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Integer, Rational, Ring};

/// Exponent pair `b^b c^c`.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// of `b`. Iteration over a [`BiPoly`] follows this order, lowest first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    pub b: u32,
    pub c: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { b: 0, c: 0 };

    pub fn new(b: u32, c: u32) -> Self {
        Monomial { b, c }
    }

    pub fn degree(self) -> u32 {
        self.b + self.c
    }

    fn divides(self, other: Monomial) -> bool {
        self.b <= other.b && self.c <= other.c
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.degree(), self.b).cmp(&(other.degree(), other.b))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for Monomial {
    type Output = Monomial;

    fn mul(self, rhs: Monomial) -> Monomial {
        Monomial::new(self.b + rhs.b, self.c + rhs.c)
    }
}

/// Polynomial in `b` and `c` over the integers. No stored coefficient is
/// ever zero, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<Monomial, Integer>,
}

impl BiPoly {
    pub fn constant(value: impl Into<Integer>) -> Self {
        Self::monomial(0, 0, value)
    }

    pub fn monomial(b_exp: u32, c_exp: u32, coeff: impl Into<Integer>) -> Self {
        let coeff = coeff.into();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(Monomial::new(b_exp, c_exp), coeff);
        }
        BiPoly { terms }
    }

    /// The variable `b`.
    pub fn b() -> Self {
        Self::monomial(1, 0, 1)
    }

    /// The variable `c`.
    pub fn c() -> Self {
        Self::monomial(0, 1, 1)
    }

    /// Builds a polynomial from `(b_exp, c_exp, coeff)` triples; repeated
    /// monomials are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, C)>,
        C: Into<Integer>,
    {
        let mut p = BiPoly::default();
        for (i, j, coeff) in terms {
            p.add_term(Monomial::new(i, j), coeff.into());
        }
        p
    }

    fn add_term(&mut self, m: Monomial, coeff: Integer) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Monomial, &Integer)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, b_exp: u32, c_exp: u32) -> Integer {
        self.terms
            .get(&Monomial::new(b_exp, c_exp))
            .cloned()
            .unwrap_or_default()
    }

    pub fn leading_term(&self) -> Option<(Monomial, &Integer)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn degree_b(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.b).max()
    }

    pub fn degree_c(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.c).max()
    }

    /// The integer value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Integer> {
        match self.terms.len() {
            0 => Some(Integer::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, k: &Integer) -> BiPoly {
        if k.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: Monomial, k: &Integer) -> BiPoly {
        if k.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(t, c)| (*t * m, c * k)).collect(),
        }
    }

    /// Exact value at a rational point.
    pub fn eval(&self, b: &Rational, c: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (m, coeff) in self.terms() {
            acc += Rational::from_integer(coeff.clone())
                * super::pow(b, m.b as u64)
                * super::pow(c, m.c as u64);
        }
        acc
    }

    pub fn eval_integer(&self, b: &Integer, c: &Integer) -> Integer {
        self.terms()
            .map(|(m, coeff)| coeff * super::pow(b, m.b as u64) * super::pow(c, m.c as u64))
            .sum()
    }

    pub fn partial_b(&self) -> BiPoly {
        BiPoly::from_terms(
            self.terms()
                .filter(|(m, _)| m.b > 0)
                .map(|(m, coeff)| (m.b - 1, m.c, coeff * m.b)),
        )
    }

    pub fn partial_c(&self) -> BiPoly {
        BiPoly::from_terms(
            self.terms()
                .filter(|(m, _)| m.c > 0)
                .map(|(m, coeff)| (m.b, m.c - 1, coeff * m.c)),
        )
    }

    /// `true` when every coefficient is nonnegative.
    pub fn has_nonneg_coeffs(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Exact quotient by another polynomial, `None` if it does not divide.
    pub fn div_poly(&self, rhs: &BiPoly) -> Option<BiPoly> {
        let (lead_m, lead_c) = rhs.leading_term()?;
        let lead_c = lead_c.clone();
        let mut rem = self.clone();
        let mut quot = BiPoly::zero();
        while let Some((m, coeff)) = rem.leading_term() {
            if !lead_m.divides(m) {
                return None;
            }
            let (q, r) = coeff.div_rem(&lead_c);
            if !r.is_zero() {
                return None;
            }
            let shift = Monomial::new(m.b - lead_m.b, m.c - lead_m.c);
            rem = rem - rhs.mul_monomial(shift, &q);
            quot.add_term(shift, q);
        }
        Some(quot)
    }

    fn combine(&self, rhs: &BiPoly, sign: i8) -> BiPoly {
        let mut out = self.clone();
        for (m, coeff) in rhs.terms() {
            if sign < 0 {
                out.add_term(m, -coeff.clone());
            } else {
                out.add_term(m, coeff.clone());
            }
        }
        out
    }

    fn product(&self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (m1, c1) in self.terms() {
            for (m2, c2) in rhs.terms() {
                out.add_term(m1 * m2, c1 * c2);
            }
        }
        out
    }
}

impl Zero for BiPoly {
    fn zero() -> Self {
        BiPoly::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for BiPoly {
    fn one() -> Self {
        BiPoly::constant(1)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, |$a:ident, $b:ident| $body:expr) => {
        impl $trait<&BiPoly> for &BiPoly {
            type Output = BiPoly;
            fn $method(self, rhs: &BiPoly) -> BiPoly {
                let ($a, $b) = (self, rhs);
                $body
            }
        }
        impl $trait<BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $method(self, rhs: BiPoly) -> BiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $method(self, rhs: &BiPoly) -> BiPoly {
                (&self).$method(rhs)
            }
        }
        impl $trait<BiPoly> for &BiPoly {
            type Output = BiPoly;
            fn $method(self, rhs: BiPoly) -> BiPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.combine(b, 1));
forward_binop!(Sub, sub, |a, b| a.combine(b, -1));
forward_binop!(Mul, mul, |a, b| a.product(b));

impl Neg for BiPoly {
    type Output = BiPoly;

    fn neg(mut self) -> BiPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;

    fn neg(self) -> BiPoly {
        -self.clone()
    }
}

impl Ring for BiPoly {
    fn from_integer(n: Integer) -> Self {
        BiPoly::constant(n)
    }

    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if let Some(k) = rhs.as_constant() {
            if k.is_zero() {
                return None;
            }
            let mut terms = BTreeMap::new();
            for (m, coeff) in self.terms() {
                let (q, r) = coeff.div_rem(&k);
                if !r.is_zero() {
                    return None;
                }
                terms.insert(m, q);
            }
            return Some(BiPoly { terms });
        }
        self.div_poly(rhs)
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, var: &str, exp: u32, first: &mut bool) -> fmt::Result {
    if exp == 0 {
        return Ok(());
    }
    if !*first {
        f.write_str("*")?;
    }
    *first = false;
    if exp == 1 {
        f.write_str(var)
    } else {
        write!(f, "{var}^{exp}")
    }
}

pub(crate) fn fmt_terms(
    f: &mut fmt::Formatter<'_>,
    terms: &BTreeMap<Monomial, Integer>,
    vars: (&str, &str),
) -> fmt::Result {
    if terms.is_empty() {
        return f.write_str("0");
    }
    for (idx, (m, coeff)) in terms.iter().rev().enumerate() {
        let mag = coeff.abs();
        if idx == 0 {
            if coeff.is_negative() {
                f.write_str("-")?;
            }
        } else if coeff.is_negative() {
            f.write_str(" - ")?;
        } else {
            f.write_str(" + ")?;
        }
        let mut first = true;
        if !mag.is_one() || *m == Monomial::ONE {
            write!(f, "{mag}")?;
            first = false;
        }
        write_power(f, vars.0, m.b, &mut first)?;
        write_power(f, vars.1, m.c, &mut first)?;
    }
    Ok(())
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, &self.terms, ("b", "c"))
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

/// Wire form shared by [`BiPoly`] and [`super::UVPoly`]:
/// `{"terms": [[i, j, "coeff"], ...]}` in ascending graded-lex order.
#[derive(Serialize, Deserialize)]
pub(crate) struct TermsWire {
    terms: Vec<(u32, u32, String)>,
}

impl TermsWire {
    pub(crate) fn from_map(terms: &BTreeMap<Monomial, Integer>) -> Self {
        TermsWire {
            terms: terms
                .iter()
                .map(|(m, c)| (m.b, m.c, c.to_str_radix(10)))
                .collect(),
        }
    }

    pub(crate) fn into_map<E: serde::de::Error>(self) -> Result<BTreeMap<Monomial, Integer>, E> {
        let mut p = BiPoly::zero();
        for (i, j, s) in self.terms {
            let coeff: Integer = s
                .parse()
                .map_err(|_| E::custom(format!("bad coefficient {s:?}")))?;
            p.add_term(Monomial::new(i, j), coeff);
        }
        Ok(p.terms)
    }
}

impl Serialize for BiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        TermsWire::from_map(&self.terms).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BiPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = TermsWire::deserialize(deserializer)?;
        Ok(BiPoly {
            terms: wire.into_map::<D::Error>()?,
        })
    }
}

impl BiPoly {
    pub(crate) fn raw_terms(&self) -> &BTreeMap<Monomial, Integer> {
        &self.terms
    }

    pub(crate) fn from_raw(terms: BTreeMap<Monomial, Integer>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        BiPoly { terms }
    }

    /// Largest absolute coefficient as `f64`, for display only.
    pub fn max_abs_coeff_f64(&self) -> f64 {
        self.terms
            .values()
            .filter_map(|c| c.abs().to_f64())
            .fold(0.0, f64::max)
    }
}

impl From<i64> for BiPoly {
    fn from(n: i64) -> Self {
        BiPoly::constant(n)
    }
}

impl From<Integer> for BiPoly {
    fn from(n: Integer) -> Self {
        BiPoly::constant(n)
    }
}
