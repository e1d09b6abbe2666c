//! Total positivity, finite Pólya frequency sequences, log-convexity and a
//! bounded-depth Stieltjes moment test.
//!
//! Every sign test is on an exact value. The Stieltjes test is a
//! semi-decision: a verdict of [`SmVerdict::Sm`] means the Hankel
//! determinant pattern characterising moment sequences holds for every
//! order up to the requested depth, not for all orders.
//!
//! ```
//! use trinomia::kernel::{int, Matrix};
//! use trinomia::positivity::is_tp;
//!
//! let m = Matrix::from_rows(vec![vec![int(1), int(3)], vec![int(1), int(2)]]);
//! let failure = is_tp(&m, 2).failure.unwrap();
//! assert_eq!((failure.rows, failure.cols), (vec![0, 1], vec![0, 1]));
//! assert_eq!(failure.value, int(-1));
//! ```

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{Integer, Matrix, Rational, Ring, UniPoly};
use crate::realroots::is_real_rooted;
use crate::report::{as_string, as_strings};
use crate::seqgen::tbc_sequence;

/// A minor of order `order` on strictly increasing row and column sets.
#[derive(Clone, PartialEq, Debug, Serialize)]
#[serde(bound = "")]
pub struct MinorReport<R: Ring> {
    pub order: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    #[serde(serialize_with = "as_string")]
    pub value: R,
}

/// Result of a total-positivity scan.
#[derive(Clone, PartialEq, Debug, Serialize)]
#[serde(bound = "")]
pub struct TpResult<R: Ring> {
    pub max_order: usize,
    /// Minors evaluated, up to and including the first failure.
    pub minors_checked: u64,
    pub failure: Option<MinorReport<R>>,
}

impl<R: Ring> TpResult<R> {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Checks that every minor of order at most `max_order` is nonnegative.
///
/// Minors are visited by order, then row set, then column set, each in
/// lexicographic order; the reported failure is the first negative minor
/// in that order regardless of how the work is split across threads.
pub fn is_tp<R: Ring + Ord>(m: &Matrix<R>, max_order: usize) -> TpResult<R> {
    let top = max_order.min(m.nrows()).min(m.ncols());
    let mut checked = 0u64;
    for order in 1..=top {
        let rows = combinations(m.nrows(), order);
        let cols = combinations(m.ncols(), order);
        let pairs: Vec<(&Vec<usize>, &Vec<usize>)> = rows
            .iter()
            .flat_map(|r| cols.iter().map(move |c| (r, c)))
            .collect();
        let zero = R::zero();
        let hit = pairs.par_iter().enumerate().find_map_first(|(pos, (r, c))| {
            let value = m.minor(r, c);
            (value < zero).then_some((pos, value))
        });
        if let Some((pos, value)) = hit {
            let (r, c) = pairs[pos];
            return TpResult {
                max_order,
                minors_checked: checked + pos as u64 + 1,
                failure: Some(MinorReport {
                    order,
                    rows: r.clone(),
                    cols: c.clone(),
                    value,
                }),
            };
        }
        checked += pairs.len() as u64;
    }
    TpResult {
        max_order,
        minors_checked: checked,
        failure: None,
    }
}

/// Checks only the 2x2 minors on consecutive rows and columns.
pub fn contiguous_tp2<R: Ring + Ord>(m: &Matrix<R>) -> Option<MinorReport<R>> {
    for i in 0..m.nrows().saturating_sub(1) {
        for j in 0..m.ncols().saturating_sub(1) {
            let (rows, cols) = (vec![i, i + 1], vec![j, j + 1]);
            let value = m.minor(&rows, &cols);
            if value < R::zero() {
                return Some(MinorReport {
                    order: 2,
                    rows,
                    cols,
                    value,
                });
            }
        }
    }
    None
}

/// A finite nonnegative sequence is a Pólya frequency sequence iff its
/// generating polynomial is real-rooted.
pub fn finite_pf_check<R: Ring + Ord + Into<Rational>>(seq: &[R]) -> Result<bool> {
    if let Some(i) = seq.iter().position(|a| *a < R::zero()) {
        return Err(Error::NegativeEntry(i));
    }
    let poly = UniPoly::new(seq.iter().cloned().map(Into::into).collect());
    is_real_rooted(&poly)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct LogConvexReport {
    pub log_convex: bool,
    /// Smallest `n` with `a_{n-1} a_{n+1} < a_n^2`.
    pub first_failure: Option<usize>,
}

/// Log-convexity of a positive sequence via `a_{n-1} a_{n+1} >= a_n^2`.
pub fn log_convex_check<R: Ring + Ord>(seq: &[R]) -> Result<LogConvexReport> {
    if let Some(i) = seq.iter().position(|a| *a <= R::zero()) {
        return Err(Error::NonPositiveEntry(i));
    }
    let first_failure = (1..seq.len().saturating_sub(1))
        .find(|&n| seq[n - 1].clone() * &seq[n + 1] < seq[n].clone() * &seq[n]);
    Ok(LogConvexReport {
        log_convex: first_failure.is_none(),
        first_failure,
    })
}

/// Tridiagonal matrix with diagonal `b`, superdiagonal `1` and subdiagonal
/// `(2c, c, c, ...)`.
#[derive(Clone, PartialEq, Debug)]
pub struct TridiagSpec<R: Ring> {
    pub b: R,
    pub c: R,
}

impl<R: Ring> TridiagSpec<R> {
    pub fn new(b: R, c: R) -> Self {
        TridiagSpec { b, c }
    }

    pub fn entry(&self, i: usize, j: usize) -> R {
        if i == j {
            self.b.clone()
        } else if j == i + 1 {
            R::one()
        } else if i == j + 1 {
            if j == 0 {
                self.c.clone() + &self.c
            } else {
                self.c.clone()
            }
        } else {
            R::zero()
        }
    }

    pub fn matrix(&self, size: usize) -> Matrix<R> {
        Matrix::from_fn(size, size, |i, j| self.entry(i, j))
    }
}

/// Leading principal minors `u_0, ..., u_N` of the tridiagonal matrix by
/// the three-term recurrence; orders up to 9 are cross-checked against a
/// direct determinant.
pub fn j_leading_minors<R: Ring>(b: &R, c: &R, big_n: usize) -> Result<Vec<R>> {
    let mut u = vec![b.clone()];
    if big_n >= 1 {
        u.push(b.clone() * b - c.clone() - c);
    }
    for n in 2..=big_n {
        let next = b.clone() * &u[n - 1] - c.clone() * &u[n - 2];
        u.push(next);
    }
    let spec = TridiagSpec::new(b.clone(), c.clone());
    let j = spec.matrix(big_n.min(8) + 1);
    for (n, un) in u.iter().enumerate().take(9) {
        let direct = j.leading(n + 1).det();
        if &direct != un {
            return Err(Error::violation(format!("leading minor u_{n}"), un, &direct));
        }
    }
    Ok(u)
}

/// Bounded-depth Stieltjes moment verdict.
#[derive(Clone, PartialEq, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SmVerdict {
    /// Pattern verified for all orders `n <= depth`.
    Sm,
    /// A leading Hankel (`shifted = false`) or shifted-Hankel determinant
    /// of order `n + 1` is negative.
    NotSm {
        n: usize,
        shifted: bool,
        #[serde(serialize_with = "as_string")]
        value: Rational,
    },
    /// No negative determinant, but the zero/positive pattern does not
    /// settle the question within the depth.
    Inconclusive { depth: usize },
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct SmReport {
    pub depth: usize,
    #[serde(serialize_with = "as_strings")]
    pub hankel: Vec<Rational>,
    #[serde(serialize_with = "as_strings")]
    pub shifted: Vec<Rational>,
    pub result: SmVerdict,
}

impl SmReport {
    pub fn is_sm(&self) -> bool {
        self.result == SmVerdict::Sm
    }
}

/// Index of the first zero if the signs are `+ ... + 0 ... 0`.
fn positive_then_zero(dets: &[Rational]) -> Option<usize> {
    let m = dets.iter().position(Zero::is_zero).unwrap_or(dets.len());
    dets[m..].iter().all(Zero::is_zero).then_some(m)
}

/// Stieltjes moment test on `det[a_{i+j}]` and `det[a_{i+j+1}]`,
/// `0 <= i, j <= n`, for `n <= depth`.
///
/// Reports SM when both sequences of determinants are positive up to some
/// order and vanish from then on, the shifted ones starting to vanish at
/// the same order `m` or at `m - 1` (a mass at the origin).
pub fn sm_check<R: Ring + Into<Rational>>(seq: &[R], depth: usize) -> Result<SmReport> {
    if seq.len() < 2 * depth + 2 {
        return Err(Error::InvalidArgument(format!(
            "sequence has {} terms, {} needed for depth {depth}",
            seq.len(),
            2 * depth + 2
        )));
    }
    let a: Vec<Rational> = seq.iter().take(2 * depth + 2).cloned().map(Into::into).collect();
    let (hankel, shifted): (Vec<Rational>, Vec<Rational>) = (0..=depth)
        .into_par_iter()
        .map(|n| {
            let h = Matrix::from_fn(n + 1, n + 1, |i, j| a[i + j].clone()).det();
            let s = Matrix::from_fn(n + 1, n + 1, |i, j| a[i + j + 1].clone()).det();
            (h, s)
        })
        .unzip();
    let negative = (0..=depth).find_map(|n| {
        if hankel[n].is_negative() {
            Some((n, false, hankel[n].clone()))
        } else if shifted[n].is_negative() {
            Some((n, true, shifted[n].clone()))
        } else {
            None
        }
    });
    let result = if let Some((n, shifted, value)) = negative {
        SmVerdict::NotSm { n, shifted, value }
    } else {
        match (positive_then_zero(&hankel), positive_then_zero(&shifted)) {
            (Some(m), Some(k)) if k == m || k + 1 == m => SmVerdict::Sm,
            _ => SmVerdict::Inconclusive { depth },
        }
    };
    Ok(SmReport {
        depth,
        hankel,
        shifted,
        result,
    })
}

/// Prefix length used to confirm the log-convexity verdict.
pub const CRITERIA_LC_PREFIX: usize = 12;
/// Hankel depth used to confirm the Stieltjes verdict.
pub const CRITERIA_SM_DEPTH: usize = 10;

/// Closed-form verdicts for `T_n(b, c)` next to their empirical checks.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct CriteriaReport {
    #[serde(serialize_with = "as_string")]
    pub b: Rational,
    #[serde(serialize_with = "as_string")]
    pub c: Rational,
    /// `b^2 >= 2c`.
    pub log_convex: bool,
    /// `b^2 >= 4c`.
    pub sm: bool,
    pub empirical_log_convex: LogConvexReport,
    pub empirical_sm: SmVerdict,
    /// `J` has no negative contiguous 2x2 minor in its leading 10x10 block.
    pub j_tp2: bool,
    pub consistent: bool,
}

/// Log-convexity and Stieltjes verdicts for `T_n(b, c)`, `b, c > 0`.
pub fn tbc_criteria(b: &Rational, c: &Rational) -> Result<CriteriaReport> {
    if !b.is_positive() || !c.is_positive() {
        return Err(Error::NonPositiveParameter);
    }
    let seq = tbc_sequence(b, c, 2 * CRITERIA_SM_DEPTH + 1);
    criteria_on(b, c, &seq)
}

/// [`tbc_criteria`] with the empirical checks run on `seq`, which must
/// hold at least `2 * CRITERIA_SM_DEPTH + 2` terms.
pub fn criteria_on(b: &Rational, c: &Rational, seq: &[Rational]) -> Result<CriteriaReport> {
    if !b.is_positive() || !c.is_positive() {
        return Err(Error::NonPositiveParameter);
    }
    if seq.len() < 2 * CRITERIA_SM_DEPTH + 2 {
        return Err(Error::InvalidArgument(format!(
            "need {} terms, got {}",
            2 * CRITERIA_SM_DEPTH + 2,
            seq.len()
        )));
    }
    let disc = b * b;
    let two = Rational::from_integer(Integer::from(2));
    let log_convex = disc >= &two * c;
    let sm = disc >= &two * &two * c;
    let empirical_log_convex = log_convex_check(&seq[..CRITERIA_LC_PREFIX])?;
    let empirical_sm = sm_check(seq, CRITERIA_SM_DEPTH)?.result;
    let j_tp2 = contiguous_tp2(&TridiagSpec::new(b.clone(), c.clone()).matrix(10)).is_none();
    let consistent = empirical_log_convex.log_convex == log_convex
        && (empirical_sm == SmVerdict::Sm) == sm
        && j_tp2 == log_convex;
    Ok(CriteriaReport {
        b: b.clone(),
        c: c.clone(),
        log_convex,
        sm,
        empirical_log_convex,
        empirical_sm,
        j_tp2,
        consistent,
    })
}
