//! Parity structure of 2x2 minors: Hankel minors of `T_n(b, c)` and
//! `M_n(b, c)`, the polynomials `f_n` and `g_n`, parity-admissible
//! matrices and their closure under products.
//!
//! A matrix with entries in `Z[b, c]` is *parity-admissible* (for the
//! substitution `b^2 = u + m v`, `c = v`) when every order-2 minor on rows
//! `i0 < i1` and columns `j0 < j1` is
//!
//! * `f(u, v)` if `i0 + i1 + j0 + j1` is even,
//! * `b * g(u, v)` if `i0 + i1 + j0 + j1` is odd,
//!
//! with `f` and `g` having nonnegative integer coefficients. The default
//! is `m = 2`, i.e. `u = b^2 - 2c`.
//!
//! ```
//! use trinomia::structure::extract_fn;
//!
//! assert_eq!(extract_fn(2).unwrap().to_string(), "x^2 + x + 4");
//! ```

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{
    basis_change, b_parity, uvpoly_nonneg, BiPoly, Integer, Matrix, Parity, ParityForm, Rational,
    Ring, UVPoly, UniPoly,
};
use crate::positivity::{combinations, TridiagSpec};
use crate::riordan::binomial_transform;
use crate::seqgen::{binom, motzkin_sequence, tbc_sequence, tbc_triangle};

fn sym_tbc(max_n: usize) -> Vec<BiPoly> {
    tbc_sequence(&BiPoly::b(), &BiPoly::c(), max_n)
}

fn sym_motzkin(max_n: usize) -> Vec<BiPoly> {
    motzkin_sequence(&BiPoly::b(), &BiPoly::c(), max_n)
}

/// `T_{i0+j0} T_{i1+j1} - T_{i0+j1} T_{i1+j0}`.
pub fn hankel_minor_poly(i0: usize, i1: usize, j0: usize, j1: usize) -> Result<BiPoly> {
    if i1 <= i0 || j1 <= j0 {
        return Err(Error::InvalidArgument("need i1 > i0 and j1 > j0".into()));
    }
    let t = sym_tbc(i1 + j1);
    Ok(&t[i0 + j0] * &t[i1 + j1] - &t[i0 + j1] * &t[i1 + j0])
}

/// Checks that `p` has the parity of `sum` and a nonnegative form in
/// `(u, v)`; `Err` carries a description of the failure.
fn parity_form(p: &BiPoly, sum: usize, m: u32) -> std::result::Result<ParityForm, String> {
    let expected = Parity::of(sum as u64);
    if p.is_zero() {
        return Ok(ParityForm {
            parity: expected,
            poly: UVPoly::zero(),
        });
    }
    match b_parity(p) {
        None => return Err("mixed parity in b".into()),
        Some(found) if found != expected => {
            return Err(format!("{found:?} in b, expected {expected:?}").to_lowercase())
        }
        _ => {}
    }
    let form = basis_change(p, m).map_err(|e| e.to_string())?;
    if !uvpoly_nonneg(&form.poly) {
        return Err(format!("negative coefficient in {}", form.poly));
    }
    Ok(form)
}

/// `T_{i-1} T_{j+1} - T_i T_j` in the `(u, v)` basis.
#[derive(Clone, Debug, Serialize)]
pub struct TliEntry {
    pub i: usize,
    pub j: usize,
    pub parity: Parity,
    #[serde(serialize_with = "crate::report::as_string")]
    pub delta: BiPoly,
    /// The polynomial `f_ij(u, v)`; `None` when the parity form fails.
    pub f: Option<UVPoly>,
    pub failure: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TliReport {
    pub max_sum: usize,
    /// `2` for `u = b^2 - 2c`, `1` for `u = b^2 - c`.
    pub m: u32,
    pub entries: Vec<TliEntry>,
}

impl TliReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.failure.is_none())
    }

    pub fn first_failure(&self) -> Option<&TliEntry> {
        self.entries.iter().find(|e| e.failure.is_some())
    }
}

/// Parity factorization of `a_{i-1} a_{j+1} - a_i a_j` for
/// `1 <= i <= j`, `i + j <= max_sum`.
pub fn verify_hankel_parity(seq: &[BiPoly], m: u32, max_sum: usize) -> Result<TliReport> {
    if max_sum < 2 {
        return Err(Error::InvalidArgument("max_sum must be at least 2".into()));
    }
    if seq.len() < max_sum {
        return Err(Error::InvalidArgument(format!(
            "sequence has {} terms, {max_sum} needed",
            seq.len()
        )));
    }
    let pairs: Vec<(usize, usize)> = (1..=max_sum / 2)
        .flat_map(|i| (i..=max_sum - i).map(move |j| (i, j)))
        .collect();
    let entries = pairs
        .par_iter()
        .map(|&(i, j)| {
            let delta = &seq[i - 1] * &seq[j + 1] - &seq[i] * &seq[j];
            let (f, failure) = match parity_form(&delta, i + j, m) {
                Ok(form) => (Some(form.poly), None),
                Err(e) => (None, Some(e)),
            };
            TliEntry {
                i,
                j,
                parity: Parity::of((i + j) as u64),
                delta,
                f,
                failure,
            }
        })
        .collect();
    Ok(TliReport {
        max_sum,
        m,
        entries,
    })
}

/// Parity factorization of `T_{i-1} T_{j+1} - T_i T_j` with `u = b^2 - 2c`.
pub fn verify_tli(max_sum: usize) -> Result<TliReport> {
    verify_hankel_parity(&sym_tbc(max_sum + 1), 2, max_sum)
}

/// Writes `a_n a_{n+2} - a_{n+1}^2 = factor * c^{n+1} * p((b^2 - m c) / c)`
/// and returns `p` after checking it is monic of degree `n` with
/// nonnegative integer coefficients.
pub fn extract_gap_poly(seq: &[BiPoly], n: usize, factor: i64, m: u32) -> Result<UniPoly> {
    if seq.len() < n + 3 {
        return Err(Error::InvalidArgument("sequence too short".into()));
    }
    let delta = &seq[n] * &seq[n + 2] - &seq[n + 1] * &seq[n + 1];
    let fail = |what: &str| Error::violation(format!("gap polynomial at n = {n}"), what, &delta);
    let form = basis_change(&delta, m)?;
    if form.parity != Parity::Even {
        return Err(fail("odd in b"));
    }
    let factor_int = Integer::from(factor);
    let mut coeffs = vec![Integer::zero(); n + 1];
    for (u, v, c) in form.poly.terms() {
        if (u + v) as usize != n + 1 || v == 0 {
            return Err(fail("not of the form c * homogeneous of degree n"));
        }
        let q = c.div_exact(&factor_int).ok_or_else(|| fail("coefficient not divisible"))?;
        coeffs[u as usize] = q;
    }
    if !coeffs[n].is_one() {
        return Err(fail("not monic of degree n"));
    }
    if coeffs.iter().any(Signed::is_negative) {
        return Err(fail("negative coefficient"));
    }
    let p = UniPoly::from_integers(coeffs.iter().cloned());
    // reconstruct factor * sum_d a_d (b^2 - m c)^d c^{n+1-d}
    let u = BiPoly::b() * BiPoly::b() - BiPoly::c().scale(&Integer::from(m));
    let mut back = BiPoly::zero();
    for (d, a) in coeffs.iter().enumerate() {
        back = back + crate::kernel::pow(&u, d as u64) * crate::kernel::pow(&BiPoly::c(), (n + 1 - d) as u64) * BiPoly::from(a.clone());
    }
    if back.scale(&factor_int) != delta {
        return Err(fail("reconstruction mismatch"));
    }
    Ok(p)
}

/// `f_n` with `T_n T_{n+2} - T_{n+1}^2 = 2 c^{n+1} f_n((b^2 - 2c) / c)`.
pub fn extract_fn(n: usize) -> Result<UniPoly> {
    extract_gap_poly(&sym_tbc(n + 2), n, 2, 2)
}

/// `g_n` with `M_n M_{n+2} - M_{n+1}^2 = c^{n+1} g_n((b^2 - c) / c)`.
pub fn extract_gn(n: usize) -> Result<UniPoly> {
    extract_gap_poly(&sym_motzkin(n + 2), n, 1, 1)
}

/// One order-2 minor of an admissibility scan.
#[derive(Clone, Debug, Serialize)]
pub struct AdmissibleMinor {
    pub rows: [usize; 2],
    pub cols: [usize; 2],
    pub parity: Parity,
    pub form: Option<UVPoly>,
    /// The minor and the reason, for failures.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AdmissibleReport {
    pub name: String,
    pub nrows: usize,
    pub ncols: usize,
    pub m: u32,
    pub minors: Vec<AdmissibleMinor>,
}

impl AdmissibleReport {
    pub fn passed(&self) -> bool {
        self.minors.iter().all(|x| x.witness.is_none())
    }

    pub fn first_failure(&self) -> Option<&AdmissibleMinor> {
        self.minors.iter().find(|x| x.witness.is_some())
    }
}

/// All order-2 row/column pairs of an `nrows x ncols` matrix.
pub fn order2_positions(nrows: usize, ncols: usize) -> Vec<([usize; 2], [usize; 2])> {
    let rows = combinations(nrows, 2);
    let cols = combinations(ncols, 2);
    rows.iter()
        .flat_map(|r| cols.iter().map(move |c| ([r[0], r[1]], [c[0], c[1]])))
        .collect()
}

/// Checks every order-2 minor of `mat` for parity admissibility.
pub fn admissible_check(name: &str, mat: &Matrix<BiPoly>, m: u32) -> AdmissibleReport {
    let minors = order2_positions(mat.nrows(), mat.ncols())
        .into_par_iter()
        .map(|(rows, cols)| {
            let value = mat.minor(&rows, &cols);
            let sum = rows[0] + rows[1] + cols[0] + cols[1];
            let (form, witness) = match parity_form(&value, sum, m) {
                Ok(form) => (Some(form.poly), None),
                Err(e) => (None, Some(format!("{value}: {e}"))),
            };
            AdmissibleMinor {
                rows,
                cols,
                parity: Parity::of(sum as u64),
                form,
                witness,
            }
        })
        .collect();
    AdmissibleReport {
        name: name.to_string(),
        nrows: mat.nrows(),
        ncols: mat.ncols(),
        m,
        minors,
    }
}

/// Leading `size x size` block of the tridiagonal `J` over `Z[b, c]`.
pub fn j_symbolic(size: usize) -> Matrix<BiPoly> {
    TridiagSpec::new(BiPoly::b(), BiPoly::c()).matrix(size)
}

/// `L_n = [T_{i,k}(b, c)]_{0 <= i, k <= n}`.
pub fn l_matrix(n: usize) -> Matrix<BiPoly> {
    tbc_triangle(&BiPoly::b(), &BiPoly::c(), n).to_matrix(n + 1)
}

/// `L_n^* = diag(1, L_n)`, of size `n + 2`.
pub fn l_star(n: usize) -> Matrix<BiPoly> {
    let l = l_matrix(n);
    Matrix::from_fn(n + 2, n + 2, |i, j| match (i, j) {
        (0, 0) => BiPoly::one(),
        (0, _) | (_, 0) => BiPoly::zero(),
        _ => l.get(i - 1, j - 1).clone(),
    })
}

/// `J_n^*`: first row `(1, 0, ..., 0)`, then rows `0..=n` of `J` over
/// columns `0..=n+1`.
pub fn j_star(n: usize) -> Matrix<BiPoly> {
    let spec = TridiagSpec::new(BiPoly::b(), BiPoly::c());
    Matrix::from_fn(n + 2, n + 2, |i, j| {
        if i == 0 {
            if j == 0 {
                BiPoly::one()
            } else {
                BiPoly::zero()
            }
        } else {
            spec.entry(i - 1, j)
        }
    })
}

/// Leading Hankel block `[T_{i+j}(b, c)]` of size `size`.
pub fn hankel_symbolic(size: usize) -> Matrix<BiPoly> {
    let t = sym_tbc(2 * size);
    Matrix::from_fn(size, size, |i, j| t[i + j].clone())
}

/// Compares each order-2 minor of `A B` at `positions` with the
/// Cauchy-Binet sum `sum_{k0<k1} A(i; k) B(k; j)`.
pub fn cauchy_binet_check<R: Ring>(
    a: &Matrix<R>,
    b: &Matrix<R>,
    positions: &[([usize; 2], [usize; 2])],
) -> Result<bool> {
    if a.ncols() != b.nrows() {
        return Err(Error::InvalidArgument("matrices are not composable".into()));
    }
    let ab = a.mul(b);
    let inner = combinations(a.ncols(), 2);
    Ok(positions.par_iter().all(|(rows, cols)| {
        let lhs = ab.minor(rows, cols);
        let rhs = inner.iter().fold(R::zero(), |acc, k| {
            acc + a.minor(rows, k) * b.minor(k, cols)
        });
        lhs == rhs
    }))
}

/// One step `L_{n+1} = L_n^* J_n^*` of the product construction.
#[derive(Clone, Debug, Serialize)]
pub struct ChainStep {
    pub n: usize,
    pub product_matches: bool,
    pub cauchy_binet: bool,
    pub admissible: bool,
}

impl ChainStep {
    pub fn passed(&self) -> bool {
        self.product_matches && self.cauchy_binet && self.admissible
    }
}

/// Runs the construction for `0 <= n <= max_n`.
pub fn verify_chain(max_n: usize) -> Result<Vec<ChainStep>> {
    (0..=max_n)
        .into_par_iter()
        .map(|n| {
            let (ls, js) = (l_star(n), j_star(n));
            let product = ls.mul(&js);
            let positions = order2_positions(n + 2, n + 2);
            Ok(ChainStep {
                n,
                product_matches: product == l_matrix(n + 1),
                cauchy_binet: cauchy_binet_check(&ls, &js, &positions)?,
                admissible: admissible_check("L", &product, 2).passed(),
            })
        })
        .collect()
}

/// One of the five Motzkin identities.
#[derive(Clone, Debug, Serialize)]
pub struct MotzkinItem {
    pub item: String,
    pub statement: String,
    pub passed: bool,
    pub failure: Option<String>,
    /// Extracted polynomials, rendered as strings.
    pub polys: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MotzkinReport {
    pub max_n: usize,
    pub items: Vec<MotzkinItem>,
}

impl MotzkinReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }
}

fn item(
    name: &str,
    statement: &str,
    failure: Option<String>,
    polys: Vec<String>,
) -> MotzkinItem {
    MotzkinItem {
        item: name.into(),
        statement: statement.into(),
        passed: failure.is_none(),
        failure,
        polys,
    }
}

/// `sum_k C(n, k) M_k(b, c) a^{n-k} = M_n(a + b, c)`: both sides have
/// degree `n` in `a`, so agreement at `a = 0, ..., n` proves it.
fn motzkin_binomial_transform(n: usize, m: &[BiPoly]) -> bool {
    (0..=n).all(|a| {
        let a_poly = BiPoly::from(a as i64);
        let lhs = (0..=n).fold(BiPoly::zero(), |acc, k| {
            acc + binom::<BiPoly>(n, k) * &m[k] * crate::kernel::pow(&a_poly, (n - k) as u64)
        });
        let rhs = crate::seqgen::motzkin_number(&(BiPoly::b() + &a_poly), &BiPoly::c(), n);
        lhs == rhs
    })
}

/// Checks the five Motzkin analogues for `n <= max_n`.
pub fn motzkin_suite(max_n: usize) -> Result<MotzkinReport> {
    if max_n < 2 {
        return Err(Error::InvalidArgument("max_n must be at least 2".into()));
    }
    let t = sym_tbc(max_n + 2);
    let m = sym_motzkin(max_n + 2);

    let first = |ok: &dyn Fn(usize) -> bool, from: usize| (from..=max_n).find(|&n| !ok(n));

    let i = first(&|n| (BiPoly::c() * &m[n]).partial_c() == t[n], 0);
    let ii = first(
        &|n| {
            let nn = BiPoly::from(n as i64);
            t[n].partial_b() == &nn * &t[n - 1] && m[n].partial_b() == &nn * &m[n - 1]
        },
        1,
    );
    let iii = first(&|n| motzkin_binomial_transform(n, &m), 0);
    // T_n(b, c) binomial transform, checked for the same range
    let iii_t = (0..=max_n).find(|&n| {
        (0..=n).any(|a| {
            binomial_transform(&BiPoly::b(), &BiPoly::c(), &BiPoly::from(a as i64), n).is_err()
        })
    });

    let iv = verify_hankel_parity(&m, 1, max_n)?;
    let v: Vec<Result<UniPoly>> = (0..=max_n).into_par_iter().map(|n| extract_gap_poly(&m, n, 1, 1)).collect();
    let v_failure = v.iter().enumerate().find_map(|(n, r)| r.as_ref().err().map(|e| format!("n = {n}: {e}")));

    let at = |n: Option<usize>| n.map(|n| format!("fails at n = {n}"));
    Ok(MotzkinReport {
        max_n,
        items: vec![
            item("i", "d(c M_n)/dc = T_n", at(i), vec![]),
            item("ii", "dT_n/db = n T_{n-1}, dM_n/db = n M_{n-1}", at(ii), vec![]),
            item(
                "iii",
                "sum_k C(n,k) M_k(b,c) a^{n-k} = M_n(a+b,c)",
                at(iii).or(iii_t.map(|n| format!("T_n transform fails at n = {n}"))),
                vec![],
            ),
            item(
                "iv",
                "M_{i-1} M_{j+1} - M_i M_j = b^e g_ij(b^2-c, c), g_ij >= 0",
                iv.first_failure().map(|e| format!("(i, j) = ({}, {}): {}", e.i, e.j, e.failure.as_deref().unwrap_or(""))),
                iv.entries.iter().filter_map(|e| e.f.as_ref().map(|f| format!("g_{},{} = {f}", e.i, e.j))).collect(),
            ),
            item(
                "v",
                "M_n M_{n+2} - M_{n+1}^2 = c^{n+1} g_n((b^2-c)/c), g_n monic of degree n, >= 0",
                v_failure,
                v.iter().enumerate().filter_map(|(n, r)| r.as_ref().ok().map(|g| format!("g_{n}(x) = {g}"))).collect(),
            ),
        ],
    })
}

/// The rational `f_n` coefficients as integers, constant term first.
pub fn integer_coeffs(p: &UniPoly) -> Vec<Integer> {
    p.coeffs().iter().map(|c: &Rational| c.to_integer()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::int;

    fn bp(terms: &[(u32, u32, i64)]) -> BiPoly {
        BiPoly::from_terms(terms.iter().copied())
    }

    fn uv(terms: &[(u32, u32, i64)]) -> UVPoly {
        UVPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn hankel_minor_examples() {
        assert_eq!(hankel_minor_poly(0, 1, 0, 1).unwrap(), bp(&[(0, 1, 2)]));
        assert_eq!(hankel_minor_poly(0, 1, 1, 2).unwrap(), bp(&[(2, 1, 2), (0, 2, -4)]));
        assert_eq!(hankel_minor_poly(0, 1, 0, 2).unwrap(), bp(&[(1, 1, 4)]));
        assert!(hankel_minor_poly(1, 1, 0, 1).is_err());
    }

    #[test]
    fn tli_examples() {
        let r = verify_tli(4).unwrap();
        assert!(r.passed());
        let get = |i, j| r.entries.iter().find(|e| e.i == i && e.j == j).unwrap();
        assert_eq!(get(1, 1).f, Some(uv(&[(0, 1, 2)])));
        assert_eq!(get(1, 2).f, Some(uv(&[(0, 1, 4)])));
        assert_eq!(get(1, 2).parity, Parity::Odd);
        assert_eq!(get(2, 2).f, Some(uv(&[(1, 1, 2)])));
        assert!(verify_tli(1).is_err());
        assert!(verify_tli(10).unwrap().passed());
    }

    #[test]
    fn fn_examples() {
        assert_eq!(integer_coeffs(&extract_fn(0).unwrap()), vec![int(1)]);
        assert_eq!(integer_coeffs(&extract_fn(1).unwrap()), vec![int(0), int(1)]);
        assert_eq!(integer_coeffs(&extract_fn(2).unwrap()), vec![int(4), int(1), int(1)]);
        for n in 3..=8 {
            let f = extract_fn(n).unwrap();
            assert_eq!(f.degree(), Some(n));
        }
        assert_eq!(integer_coeffs(&extract_gn(0).unwrap()), vec![int(1)]);
    }

    #[test]
    fn admissible_examples() {
        let j = admissible_check("J", &j_symbolic(6), 2);
        assert!(j.passed());
        let first = j.minors.iter().find(|x| x.rows == [0, 1] && x.cols == [0, 1]).unwrap();
        assert_eq!(first.form, Some(uv(&[(1, 0, 1)])));
        assert_eq!(first.parity, Parity::Even);
        assert!(admissible_check("Tbc", &l_matrix(5), 2).passed());

        let bad = Matrix::from_rows(vec![vec![BiPoly::one(), BiPoly::zero()], vec![BiPoly::zero(), BiPoly::b()]]);
        let r = admissible_check("counterexample", &bad, 2);
        assert!(!r.passed());
        assert_eq!(r.first_failure().unwrap().rows, [0, 1]);
    }

    #[test]
    fn cauchy_binet_examples() {
        let id = Matrix::<Integer>::identity(2);
        assert!(cauchy_binet_check(&id, &id, &order2_positions(2, 2)).unwrap());
        let a = Matrix::from_fn(3, 4, |i, j| int((i * 7 + j * 3) as i64 % 5 - 2));
        let b = Matrix::from_fn(4, 3, |i, j| int((i * 2 + j * 5) as i64 % 7 - 3));
        assert!(cauchy_binet_check(&a, &b, &order2_positions(3, 3)).unwrap());
        assert!(cauchy_binet_check(&a, &a, &[]).is_err());

        assert_eq!(l_star(3).mul(&j_star(3)), l_matrix(4));
        let steps = verify_chain(3).unwrap();
        assert!(steps.iter().all(ChainStep::passed));
    }

    #[test]
    fn hankel_is_admissible() {
        assert!(admissible_check("H", &hankel_symbolic(5), 2).passed());
    }

    #[test]
    fn motzkin_examples() {
        let t = sym_tbc(3);
        assert_eq!(t[3].partial_b(), BiPoly::from(3) * &t[2]);
        let m = sym_motzkin(2);
        assert_eq!((BiPoly::c() * &m[2]).partial_c(), t[2]);
        let r = motzkin_suite(6).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.items[4].polys[0].ends_with("= 1"));
    }
}
