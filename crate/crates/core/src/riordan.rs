//! Proper Riordan arrays `R(g, f)`: column `k` has generating function
//! `x^k f(x)^k g(x)`.
//!
//! A proper array is also determined by its A- and Z-sequences through
//! `r_{n+1,0} = sum_j z_j r_{n,j}` and `r_{n+1,k+1} = sum_j a_j r_{n,k+j}`.
//! [`extract_az`] reads them off a materialized triangle and
//! [`gf_from_az`] rebuilds `(g, f)` from them via `f = A(x f)` and
//! `g = 1 / (1 - x Z(x f))`.
//!
//! ```
//! use trinomia::riordan::{extract_az, tbc_riordan, riordan_matrix};
//! use trinomia::BiPoly;
//!
//! let tbc = riordan_matrix(&tbc_riordan(8)).unwrap();
//! let az = extract_az(&tbc).unwrap();
//! assert_eq!(az.a_seq, vec![BiPoly::from(1), BiPoly::b(), BiPoly::c()]);
//! assert_eq!(az.z_seq, vec![BiPoly::b(), BiPoly::c() * BiPoly::from(2)]);
//! ```

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::kernel::{pow, BiPoly, Ring, TruncSeries};
use crate::seqgen::{binom, motzkin_by_series, tbc_by_series, tbc_number, TriangleMatrix};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RiordanArray<R> {
    g: TruncSeries<R>,
    f: TruncSeries<R>,
    depth: usize,
}

impl<R: Ring> RiordanArray<R> {
    /// `g_0` must be 1 and `f_0` nonzero; both series must reach `depth`.
    pub fn new(g: TruncSeries<R>, f: TruncSeries<R>, depth: usize) -> Result<Self> {
        if !g.coeffs()[0].is_one() || f.coeffs()[0].is_zero() {
            return Err(Error::NotProperRiordan);
        }
        if depth > g.order() || depth > f.order() {
            return Err(Error::DepthExceedsOrder);
        }
        Ok(RiordanArray { g, f, depth })
    }

    pub fn g(&self) -> &TruncSeries<R> {
        &self.g
    }

    pub fn f(&self) -> &TruncSeries<R> {
        &self.f
    }

    pub fn depth(&self) -> usize {
        self.depth
    }
}

/// Coefficient lists of `A(x)` and `Z(x)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AZPair<R> {
    pub a_seq: Vec<R>,
    pub z_seq: Vec<R>,
}

/// Rows `0..=depth` of the array.
pub fn riordan_matrix<R: Ring>(array: &RiordanArray<R>) -> Result<TriangleMatrix<R>> {
    let depth = array.depth;
    let g = array.g.truncate(depth);
    let f = array.f.truncate(depth);
    let mut rows: Vec<Vec<R>> = (0..=depth).map(|n| Vec::with_capacity(n + 1)).collect();
    // column k: x^k f^k g
    let mut col = g;
    for k in 0..=depth {
        for (n, row) in rows.iter_mut().enumerate().skip(k) {
            row.push(col.coeffs()[n - k].clone());
        }
        col = col.mul(&f);
    }
    Ok(TriangleMatrix::from_rows(rows))
}

/// Both sides of `sum_k r_{n,k} h_k = [x^n] g(x) h(x f(x))`, computed
/// independently; returns the common value or a violation.
pub fn ftra_sum<R: Ring>(array: &RiordanArray<R>, h: &TruncSeries<R>, n: usize) -> Result<R> {
    if n > array.depth || h.order() < n {
        return Err(Error::DepthExceedsOrder);
    }
    let m = riordan_matrix(array)?;
    let lhs = (0..=n).fold(R::zero(), |acc, k| acc + m.get(n, k) * &h.coeffs()[k]);

    let order = n;
    let xf = array.f.truncate(order).shift_x();
    let composed = h.truncate(order).compose(&xf)?;
    let rhs = array.g.truncate(order).mul(&composed).coeffs()[n].clone();
    if lhs != rhs {
        return Err(Error::violation("fundamental theorem of Riordan arrays", &lhs, &rhs));
    }
    Ok(lhs)
}

fn trim_trailing_zeros<R: Ring>(mut v: Vec<R>) -> Vec<R> {
    while v.len() > 1 && v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

/// Solves the A/Z row recurrences for a unit-diagonal triangle.
///
/// Coefficients `a_j`, `z_j` are determined for `j < depth`; trailing zeros
/// are dropped (at least one coefficient is kept). The recovered sequences
/// are then checked against every entry of the triangle, so a triangle that
/// is not a Riordan array is rejected as well.
pub fn extract_az<R: Ring>(m: &TriangleMatrix<R>) -> Result<AZPair<R>> {
    let depth = m.depth();
    if (0..=depth).any(|n| !m.get(n, n).is_one()) {
        return Err(Error::NotProperRiordan);
    }
    // with unit diagonal, equation (n = j, k = 0) isolates a_j:
    // r_{j+1,1} = sum_{i<=j} a_i r_{j,i}
    let mut a_seq: Vec<R> = Vec::with_capacity(depth);
    let mut z_seq: Vec<R> = Vec::with_capacity(depth);
    for j in 0..depth {
        let mut a = m.get(j + 1, 1);
        let mut z = m.get(j + 1, 0);
        for i in 0..j {
            a = a - a_seq[i].clone() * &m.get(j, i);
            z = z - z_seq[i].clone() * &m.get(j, i);
        }
        a_seq.push(a);
        z_seq.push(z);
    }
    for n in 0..depth {
        for k in 0..n {
            let rhs = (0..=n - k).fold(R::zero(), |acc, j| acc + a_seq[j].clone() * &m.get(n, k + j));
            if m.get(n + 1, k + 1) != rhs {
                return Err(Error::NotProperRiordan);
            }
        }
    }
    if depth == 0 {
        return Ok(AZPair {
            a_seq: vec![R::one()],
            z_seq: vec![R::zero()],
        });
    }
    Ok(AZPair {
        a_seq: trim_trailing_zeros(a_seq),
        z_seq: trim_trailing_zeros(z_seq),
    })
}

/// Rebuilds `(g, f)` to the given order from A/Z sequences with `a_0 = 1`.
pub fn gf_from_az<R: Ring>(az: &AZPair<R>, order: usize) -> Result<RiordanArray<R>> {
    if !az.a_seq.first().is_some_and(One::is_one) {
        return Err(Error::UnsupportedLeadingA);
    }
    let a = TruncSeries::new(az.a_seq.clone(), order);
    let z = TruncSeries::new(az.z_seq.clone(), order);
    // each pass of f <- A(x f) fixes one more coefficient
    let mut f = TruncSeries::one(order);
    for _ in 0..=order {
        f = a.compose(&f.shift_x())?;
    }
    let xz = z.compose(&f.shift_x())?.shift_x();
    let g = TruncSeries::one(order).sub(&xz).inverse()?;
    RiordanArray::new(g, f, order)
}

/// The generalized Pascal triangle `[C(n,k) a^{n-k}] = R(1/(1-ax), 1/(1-ax))`.
pub fn pascal_array<R: Ring>(a: &R, order: usize) -> RiordanArray<R> {
    let geo = TruncSeries::from_fn(order, |k| pow(a, k as u64));
    RiordanArray::new(geo.clone(), geo, order).expect("geometric series is proper")
}

/// `R(T(x), M(x))` in symbolic `(b, c)`, built from the closed-form
/// generating functions.
pub fn tbc_riordan(order: usize) -> RiordanArray<BiPoly> {
    let (b, c) = (BiPoly::b(), BiPoly::c());
    let g = TruncSeries::new(tbc_by_series(&b, &c, order), order);
    let f = TruncSeries::new(
        motzkin_by_series(&b, &c, order).expect("2c divides the radical series"),
        order,
    );
    RiordanArray::new(g, f, order).expect("T(x), M(x) form a proper array")
}

/// `R(M(x), M(x))` in symbolic `(b, c)`.
pub fn motzkin_riordan(order: usize) -> RiordanArray<BiPoly> {
    let (b, c) = (BiPoly::b(), BiPoly::c());
    let m = TruncSeries::new(
        motzkin_by_series(&b, &c, order).expect("2c divides the radical series"),
        order,
    );
    RiordanArray::new(m.clone(), m, order).expect("M(x) is proper")
}

/// Residual of `c x^2 f^2 - (1 - bx) f + 1` for a symbolic `f`.
pub fn motzkin_quadratic_residual(f: &TruncSeries<BiPoly>) -> TruncSeries<BiPoly> {
    let order = f.order();
    let (b, c) = (BiPoly::b(), BiPoly::c());
    let cx2 = TruncSeries::new(vec![BiPoly::zero(), BiPoly::zero(), c], order);
    let one_minus_bx = TruncSeries::new(vec![BiPoly::one(), -b], order);
    cx2.mul(&f.mul(f))
        .sub(&one_minus_bx.mul(f))
        .add(&TruncSeries::one(order))
}

/// Checks `sum_k C(n,k) T_k(b,c) a^{n-k} = T_n(a+b, c)` with both sides
/// computed independently.
pub fn binomial_transform<R: Ring>(b: &R, c: &R, a: &R, n: usize) -> Result<R> {
    let seq = crate::seqgen::tbc_sequence(b, c, n);
    let lhs = (0..=n).fold(R::zero(), |acc, k| {
        acc + binom::<R>(n, k) * &seq[k] * &pow(a, (n - k) as u64)
    });
    let rhs = tbc_number(&(a.clone() + b), c, n);
    if lhs != rhs {
        return Err(Error::violation("binomial transform of T_n(b,c)", &lhs, &rhs));
    }
    Ok(lhs)
}
