//! Sequences and triangles, each reachable by more than one independent
//! route so that every route can check the others.
//!
//! All generators are generic over [`Ring`]: pass integers or rationals
//! for numeric values, or `BiPoly::b()` / `BiPoly::c()` for symbolic ones.
//!
//! ```
//! use trinomia::seqgen::{tbc_number, tbc_number_direct, trinomial_expand_oracle};
//! use trinomia::BiPoly;
//!
//! let (b, c) = (BiPoly::b(), BiPoly::c());
//! let t3 = tbc_number(&b, &c, 3);
//! assert_eq!(t3.to_string(), "b^3 + 6*b*c");
//! assert_eq!(t3, tbc_number_direct(&b, &c, 3));
//! assert_eq!(t3, trinomial_expand_oracle(&b, &c, 3));
//! ```

use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};

use crate::kernel::{
    binomial, pow, series_inv_sqrt, Integer, Matrix, Rational, Ring, TruncSeries, UniPoly,
};

/// Lower-triangular array; row `n` holds columns `0..=n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TriangleMatrix<R> {
    rows: Vec<Vec<R>>,
}

impl<R: Ring> TriangleMatrix<R> {
    /// Panics unless row `n` has exactly `n + 1` entries.
    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        for (n, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n + 1, "row {n} of a triangle must have {} entries", n + 1);
        }
        TriangleMatrix { rows }
    }

    pub fn rows(&self) -> &[Vec<R>] {
        &self.rows
    }

    /// Index of the last row.
    pub fn depth(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Entry `(n, k)`, zero above the diagonal.
    pub fn get(&self, n: usize, k: usize) -> R {
        if k > n {
            return R::zero();
        }
        self.rows[n][k].clone()
    }

    /// Leading `size x size` square block.
    pub fn to_matrix(&self, size: usize) -> Matrix<R> {
        Matrix::from_fn(size, size, |i, j| self.get(i, j))
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> TriangleMatrix<S> {
        TriangleMatrix {
            rows: self.rows.iter().map(|r| r.iter().map(&f).collect()).collect(),
        }
    }

    pub fn truncate(&self, depth: usize) -> Self {
        TriangleMatrix {
            rows: self.rows[..=depth.min(self.depth())].to_vec(),
        }
    }
}

/// Process-wide table of factorials. Grows under a write lock; readers get
/// an immutable snapshot.
fn factorials(n: usize) -> Arc<Vec<Integer>> {
    static TABLE: OnceLock<RwLock<Arc<Vec<Integer>>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| RwLock::new(Arc::new(vec![Integer::one()])));
    {
        let snapshot = table.read().unwrap();
        if snapshot.len() > n {
            return Arc::clone(&snapshot);
        }
    }
    let mut guard = table.write().unwrap();
    if guard.len() <= n {
        let mut next = Vec::clone(&guard);
        while next.len() <= n {
            let k = next.len();
            let v = next[k - 1].clone() * k;
            next.push(v);
        }
        *guard = Arc::new(next);
    }
    Arc::clone(&guard)
}

/// `T(n, k) = n! / (k! k! (n - 2k)!)`, zero unless `2k <= n`.
pub fn tnk_coeff(n: usize, k: usize) -> Integer {
    if 2 * k > n {
        return Integer::zero();
    }
    let f = factorials(n);
    &f[n] / (&f[k] * &f[k] * &f[n - 2 * k])
}

/// Rows `0..rows` of the triangle `[T(n, k)]`, padded with zeros to full
/// lower-triangular shape.
pub fn tnk_triangle(rows: usize) -> TriangleMatrix<Integer> {
    TriangleMatrix::from_rows(
        (0..rows)
            .map(|n| (0..=n).map(|k| tnk_coeff(n, k)).collect())
            .collect(),
    )
}

/// Coefficients `T(n, 0), ..., T(n, n/2)` via the ratio
/// `T(n, k+1) / T(n, k) = (n-2k)(n-2k-1) / (k+1)^2`.
pub fn tnk_row(n: usize) -> Vec<Integer> {
    let mut row = Vec::with_capacity(n / 2 + 1);
    let mut cur = Integer::one();
    row.push(cur.clone());
    for k in 0..n / 2 {
        cur = cur * ((n - 2 * k) * (n - 2 * k - 1)) / ((k + 1) * (k + 1));
        row.push(cur.clone());
    }
    row
}

/// Row polynomial `G_n(x) = sum_k T(n, k) x^k`, of degree `n / 2`.
pub fn row_poly(n: usize) -> UniPoly {
    UniPoly::from_integers(tnk_row(n))
}

/// `G_0, ..., G_max` from `(n+1) G_{n+1} = (2n+1) G_n + n (4x - 1) G_{n-1}`.
pub fn row_polys_by_recurrence(max_n: usize) -> Vec<UniPoly> {
    let mut out = vec![UniPoly::one()];
    if max_n == 0 {
        return out;
    }
    out.push(UniPoly::one());
    let four_x_minus_one = UniPoly::from_integers([-1, 4]);
    for n in 1..max_n {
        let lhs = out[n].scale(&Rational::from_integer((2 * n + 1).into()))
            + (&four_x_minus_one * &out[n - 1]).scale(&Rational::from_integer(n.into()));
        out.push(lhs.scale(&Rational::new(1.into(), (n + 1).into())));
    }
    out
}

/// `T_0(b, c), ..., T_max(b, c)` by the three-term recurrence
/// `(n+1) T_{n+1} = (2n+1) b T_n - n (b^2 - 4c) T_{n-1}`.
///
/// Panics if a division by `n + 1` is not exact, which can only be an
/// arithmetic bug.
pub fn tbc_sequence<R: Ring>(b: &R, c: &R, max_n: usize) -> Vec<R> {
    let mut out = vec![R::one()];
    if max_n == 0 {
        return out;
    }
    out.push(b.clone());
    let disc = b.clone() * b - R::from_i64(4) * c;
    for n in 1..max_n {
        let next = R::from_i64(2 * n as i64 + 1) * b * &out[n]
            - R::from_i64(n as i64) * &disc * &out[n - 1];
        let next = next
            .div_integer(&Integer::from(n + 1))
            .expect("recurrence for T_n(b,c) must divide exactly");
        out.push(next);
    }
    out
}

/// `T_n(b, c)` by the three-term recurrence.
pub fn tbc_number<R: Ring>(b: &R, c: &R, n: usize) -> R {
    tbc_sequence(b, c, n).pop().unwrap()
}

/// `T_n(b, c) = sum_k T(n, k) b^{n-2k} c^k`.
pub fn tbc_number_direct<R: Ring>(b: &R, c: &R, n: usize) -> R {
    let mut acc = R::zero();
    for k in 0..=n / 2 {
        acc = acc
            + R::from_integer(tnk_coeff(n, k)) * pow(b, (n - 2 * k) as u64) * pow(c, k as u64);
    }
    acc
}

/// Coefficient of `x^n` in `(x^2 + b x + c)^n`, by repeated convolution.
pub fn trinomial_expand_oracle<R: Ring>(b: &R, c: &R, n: usize) -> R {
    let factor = [c.clone(), b.clone(), R::one()];
    let mut acc = vec![R::one()];
    for _ in 0..n {
        let mut next = vec![R::zero(); acc.len() + 2];
        for (i, a) in acc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, f) in factor.iter().enumerate() {
                next[i + j] = std::mem::replace(&mut next[i + j], R::zero()) + a.clone() * f;
            }
        }
        acc = next;
    }
    acc[n].clone()
}

/// The series `1 - 2b x + (b^2 - 4c) x^2`.
pub fn tbc_gf_radicand<R: Ring>(b: &R, c: &R, order: usize) -> TruncSeries<R> {
    TruncSeries::new(
        vec![
            R::one(),
            -(R::from_i64(2) * b),
            b.clone() * b - R::from_i64(4) * c,
        ],
        order,
    )
}

/// `T_0, ..., T_order` as coefficients of `1 / sqrt(1 - 2bx + (b^2 - 4c) x^2)`.
pub fn tbc_by_series<R: Ring>(b: &R, c: &R, order: usize) -> Vec<R> {
    series_inv_sqrt(&tbc_gf_radicand(b, c, order), order)
        .expect("radicand has unit constant term and integral coefficients")
        .into_coeffs()
}

/// `T_{n,k}(b, c)`, the coefficient of `x^k` in `(x + b + c/x)^n`.
///
/// `T_{n,-k} = c^k T_{n,k}`; zero when `|k| > n`.
pub fn laurent_entry<R: Ring>(n: usize, k: i64, b: &R, c: &R) -> R {
    let ak = k.unsigned_abs() as usize;
    if ak > n {
        return R::zero();
    }
    let f = factorials(n);
    let mut acc = R::zero();
    let mut j = 0;
    while ak + 2 * j <= n {
        let coeff = &f[n] / (&f[j] * &f[j + ak] * &f[n - ak - 2 * j]);
        acc = acc
            + R::from_integer(coeff) * pow(b, (n - ak - 2 * j) as u64) * pow(c, j as u64);
        j += 1;
    }
    if k < 0 {
        acc * pow(c, ak as u64)
    } else {
        acc
    }
}

/// Coefficients of `(x + b + c/x)^n` for exponents `-n..=n`, by direct
/// Laurent convolution.
pub fn laurent_row_expand<R: Ring>(n: usize, b: &R, c: &R) -> Vec<R> {
    let mut row = vec![R::one()];
    for _ in 0..n {
        let mut next = vec![R::zero(); row.len() + 2];
        for (i, a) in row.iter().enumerate() {
            next[i] = std::mem::replace(&mut next[i], R::zero()) + a.clone() * c;
            next[i + 1] = std::mem::replace(&mut next[i + 1], R::zero()) + a.clone() * b;
            next[i + 2] = std::mem::replace(&mut next[i + 2], R::zero()) + a.clone();
        }
        row = next;
    }
    row
}

/// Rows `0..=depth` of `[T_{n,k}(b, c)]_{n,k >= 0}`.
pub fn tbc_triangle<R: Ring>(b: &R, c: &R, depth: usize) -> TriangleMatrix<R> {
    TriangleMatrix::from_rows(
        (0..=depth)
            .map(|n| (0..=n).map(|k| laurent_entry(n, k as i64, b, c)).collect())
            .collect(),
    )
}

/// Generalized Motzkin number `M_n(b, c) = sum_k n!/(k!(k+1)!(n-2k)!) b^{n-2k} c^k`.
pub fn motzkin_number<R: Ring>(b: &R, c: &R, n: usize) -> R {
    let f = factorials(n + 1);
    let mut acc = R::zero();
    for k in 0..=n / 2 {
        let coeff = &f[n] / (&f[k] * &f[k + 1] * &f[n - 2 * k]);
        acc = acc + R::from_integer(coeff) * pow(b, (n - 2 * k) as u64) * pow(c, k as u64);
    }
    acc
}

pub fn motzkin_sequence<R: Ring>(b: &R, c: &R, max_n: usize) -> Vec<R> {
    (0..=max_n).map(|n| motzkin_number(b, c, n)).collect()
}

/// `M_0, ..., M_order` from `(1 - bx - sqrt(1 - 2bx + (b^2-4c)x^2)) / (2 c x^2)`.
///
/// `M_n = -[x^{n+2}] sqrt(...) / (2c)`; requires `2c` to divide exactly.
pub fn motzkin_by_series<R: Ring>(b: &R, c: &R, order: usize) -> Option<Vec<R>> {
    let p = tbc_gf_radicand(b, c, order + 2);
    let inv = series_inv_sqrt(&p, order + 2).ok()?;
    let sqrt = p.mul(&inv);
    let two_c = R::from_i64(2) * c;
    (0..=order)
        .map(|n| (-sqrt.coeffs()[n + 2].clone()).div_exact(&two_c))
        .collect()
}

/// `binomial(n, k)` as a ring element.
pub(crate) fn binom<R: Ring>(n: usize, k: usize) -> R {
    R::from_integer(binomial(n as u64, k as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{int, rational, BiPoly};

    fn sym() -> (BiPoly, BiPoly) {
        (BiPoly::b(), BiPoly::c())
    }

    #[test]
    fn tnk_examples() {
        assert_eq!(tnk_coeff(4, 1), int(12));
        assert_eq!(tnk_coeff(5, 2), int(30));
        assert_eq!(tnk_coeff(0, 0), int(1));
        assert_eq!(tnk_coeff(3, 2), int(0));
        let tri = tnk_triangle(6);
        assert_eq!(tri.rows()[5], vec![int(1), int(20), int(30), int(0), int(0), int(0)]);
        for n in 0..30 {
            let row = tnk_row(n);
            assert_eq!(row.len(), n / 2 + 1);
            for (k, v) in row.iter().enumerate() {
                assert_eq!(*v, tnk_coeff(n, k));
            }
        }
    }

    #[test]
    fn row_poly_examples() {
        assert_eq!(row_poly(4), UniPoly::from_integers([1, 12, 6]));
        assert_eq!(row_poly(2), UniPoly::from_integers([1, 2]));
        assert_eq!(row_poly(7).eval(&rational(1, 1)), rational(393, 1));
        let two_g2 = row_poly(2).scale(&rational(2, 1));
        let rhs = row_poly(1).scale(&rational(3, 1)) + UniPoly::from_integers([-1, 4]) * row_poly(0);
        assert_eq!(two_g2, rhs);
    }

    #[test]
    fn row_poly_matches_recurrence() {
        let rec = row_polys_by_recurrence(40);
        for (n, g) in rec.iter().enumerate() {
            assert_eq!(*g, row_poly(n), "n = {n}");
            assert_eq!(g.degree(), Some(n / 2));
            assert!(g.coeffs().iter().all(|c| *c > rational(0, 1)));
        }
    }

    #[test]
    fn tbc_examples() {
        assert_eq!(tbc_number(&int(1), &int(1), 5), int(51));
        assert_eq!(tbc_number(&int(2), &int(1), 4), int(70));
        let (b, c) = sym();
        assert_eq!(tbc_number(&b, &c, 2), BiPoly::from_terms([(2, 0, 1), (0, 1, 2)]));
        assert_eq!(tbc_number_direct(&int(3), &int(2), 3), int(63));
        assert_eq!(tbc_number_direct(&int(1), &int(1), 4), int(19));
        assert_eq!(tbc_number_direct(&b, &c, 1), b);
        assert_eq!(trinomial_expand_oracle(&int(1), &int(1), 2), int(3));
        assert_eq!(trinomial_expand_oracle(&int(3), &int(2), 2), int(13));
        assert_eq!(trinomial_expand_oracle(&b, &c, 0), BiPoly::one());
    }

    #[test]
    fn rational_parameters() {
        let (b, c) = (rational(1, 2), rational(-1, 3));
        let seq = tbc_sequence(&b, &c, 12);
        for (n, t) in seq.iter().enumerate() {
            assert_eq!(*t, tbc_number_direct(&b, &c, n));
            assert_eq!(*t, trinomial_expand_oracle(&b, &c, n));
        }
    }

    #[test]
    fn laurent_examples() {
        let (b, c) = sym();
        assert_eq!(laurent_entry(3, 1, &b, &c), BiPoly::from_terms([(2, 0, 3), (0, 1, 3)]));
        for n in 0..6 {
            assert_eq!(laurent_entry(n, n as i64, &b, &c), BiPoly::one());
        }
        assert_eq!(laurent_entry(2, -1, &b, &c), BiPoly::from_terms([(1, 1, 2)]));
        assert_eq!(laurent_entry(2, 3, &b, &c), BiPoly::zero());
        assert_eq!(laurent_entry(2, -3, &b, &c), BiPoly::zero());
    }

    #[test]
    fn laurent_matches_convolution() {
        let (b, c) = sym();
        for n in 0..10 {
            let row = laurent_row_expand(n, &b, &c);
            for k in -(n as i64)..=n as i64 {
                assert_eq!(row[(k + n as i64) as usize], laurent_entry(n, k, &b, &c));
            }
        }
    }

    #[test]
    fn motzkin_examples() {
        let m: Vec<_> = (0..6).map(|n| motzkin_number(&int(1), &int(1), n)).collect();
        assert_eq!(m, [1, 1, 2, 4, 9, 21].map(int).to_vec());
        let (b, c) = sym();
        assert_eq!(motzkin_number(&b, &c, 1), b);
        assert_eq!(
            motzkin_by_series(&b, &c, 10).unwrap(),
            motzkin_sequence(&b, &c, 10)
        );
    }

    #[test]
    fn triangle_rows() {
        let (b, c) = sym();
        let t = tbc_triangle(&b, &c, 4);
        assert_eq!(
            t.rows()[4],
            vec![
                BiPoly::from_terms([(4, 0, 1), (2, 1, 12), (0, 2, 6)]),
                BiPoly::from_terms([(3, 0, 4), (1, 1, 12)]),
                BiPoly::from_terms([(2, 0, 6), (0, 1, 4)]),
                BiPoly::from_terms([(1, 0, 4)]),
                BiPoly::one(),
            ]
        );
    }
}
