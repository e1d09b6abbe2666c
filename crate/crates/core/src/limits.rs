//! Mean, variance and normal-limit diagnostics for the row distributions
//! `p(n, k) = T(n, k) / T_n`.
//!
//! Moments are exact rationals. The local and central limit gaps compare
//! exact probability masses with the Gaussian density and distribution
//! function; floats enter only at that comparison.
//!
//! ```
//! use trinomia::kernel::rational;
//! use trinomia::limits::moment_stats;
//!
//! let s = moment_stats(4);
//! assert_eq!(s.mu, rational(24, 19));
//! assert_eq!(s.sigma2, rational(108, 361));
//! ```

use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{Integer, Rational};
use crate::report::as_string;
use crate::seqgen::{tbc_sequence, tnk_row};

/// Mean and variance of `p(n, .)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct MomentStats {
    pub n: usize,
    #[serde(serialize_with = "as_string")]
    pub mu: Rational,
    #[serde(serialize_with = "as_string")]
    pub sigma2: Rational,
}

/// `G_n(1), G_n'(1), G_n''(1)`.
fn derivatives_at_one(row: &[Integer]) -> (Integer, Integer, Integer) {
    let mut g = Integer::zero();
    let mut d1 = Integer::zero();
    let mut d2 = Integer::zero();
    for (k, t) in row.iter().enumerate() {
        g += t;
        d1 += t * k;
        if k >= 2 {
            d2 += t * (k * (k - 1));
        }
    }
    (g, d1, d2)
}

fn stats_from_row(n: usize, row: &[Integer]) -> MomentStats {
    let (g, d1, d2) = derivatives_at_one(row);
    let mu = Rational::new(d1, g.clone());
    let sigma2 = Rational::new(d2, g) + &mu - &mu * &mu;
    MomentStats { n, mu, sigma2 }
}

/// `mu_n = G_n'(1) / G_n(1)` and
/// `sigma_n^2 = G_n''(1) / G_n(1) + mu_n - mu_n^2`.
pub fn moment_stats(n: usize) -> MomentStats {
    stats_from_row(n, &tnk_row(n))
}

/// Central trinomial coefficients `T_0, ..., T_max`.
pub fn central_trinomials(max_n: usize) -> Vec<Integer> {
    tbc_sequence(&Integer::one(), &Integer::one(), max_n)
}

/// `mu_n = n (T_n - T_{n-1}) / (2 T_n)` and
/// `sigma_n^2 = n (n-1) T_{n-2} / T_n - mu_n^2` from the central
/// trinomial coefficients; needs `t.len() > n >= 1`.
pub fn moment_stats_closed(n: usize, t: &[Integer]) -> MomentStats {
    let nn = Integer::from(n);
    let mu = Rational::new(&nn * (&t[n] - &t[n - 1]), Integer::from(2) * &t[n]);
    let falling = if n >= 2 {
        Rational::new(&nn * (n - 1) * &t[n - 2], t[n].clone())
    } else {
        Rational::zero()
    };
    let sigma2 = falling - &mu * &mu;
    MomentStats { n, mu, sigma2 }
}

/// `G_n''(1) + G_n'(1) = n (n-1) T_{n-2}`.
pub fn identity_2plus1(n: usize) -> Result<bool> {
    if n < 2 {
        return Err(Error::InvalidArgument("n must be at least 2".into()));
    }
    let (_, d1, d2) = derivatives_at_one(&tnk_row(n));
    let lhs = d2 + d1;
    let rhs = Integer::from(n * (n - 1)) * &central_trinomials(n - 2)[n - 2];
    if lhs != rhs {
        return Err(Error::violation("G''(1) + G'(1) = n(n-1)T_{n-2}", lhs, rhs));
    }
    Ok(true)
}

/// `|T_{n-1} / T_n - 1/3|`.
pub fn ratio_gap(n: usize) -> Rational {
    let t = central_trinomials(n);
    let third = Rational::new(1.into(), 3.into());
    (Rational::new(t[n - 1].clone(), t[n].clone()) - third).abs()
}

/// The default grid `-4, -15/4, ..., 4`.
pub fn default_grid() -> Vec<Rational> {
    (-16..=16).map(|i| Rational::new(i.into(), 4.into())).collect()
}

/// `floor(mu + x sigma)` with `sigma = sqrt(sigma2)`, decided exactly.
pub fn floor_mu_plus_x_sigma(mu: &Rational, sigma2: &Rational, x: &Rational) -> Integer {
    let x2s2 = x * x * sigma2;
    // k - mu <= x sigma
    let le = |k: &Integer| {
        let t = Rational::from_integer(k.clone()) - mu;
        if x.is_negative() {
            !t.is_positive() && &t * &t >= x2s2
        } else {
            !t.is_positive() || &t * &t <= x2s2
        }
    };
    let guess = to_f64(mu) + to_f64(x) * to_f64(sigma2).sqrt();
    let mut k = Integer::from(guess.floor() as i64);
    while !le(&k) {
        k -= 1;
    }
    while le(&(&k + 1)) {
        k += 1;
    }
    k
}

fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

fn gaussian_density(x: f64) -> f64 {
    (-x * x / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

fn gaussian_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

/// Exact row data reused by the local and central gaps.
struct RowDistribution {
    row: Vec<Integer>,
    /// `prefix[k] = T(n, 0) + ... + T(n, k)`.
    prefix: Vec<Integer>,
    stats: MomentStats,
}

impl RowDistribution {
    fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument("n must be at least 2".into()));
        }
        let row = tnk_row(n);
        let mut acc = Integer::zero();
        let prefix = row
            .iter()
            .map(|t| {
                acc += t;
                acc.clone()
            })
            .collect();
        let stats = stats_from_row(n, &row);
        Ok(RowDistribution { row, prefix, stats })
    }

    fn total(&self) -> &Integer {
        self.prefix.last().unwrap()
    }

    fn floor_at(&self, x: &Rational) -> Integer {
        floor_mu_plus_x_sigma(&self.stats.mu, &self.stats.sigma2, x)
    }

    /// `p(n, k)` as an exact rational.
    fn mass(&self, k: &Integer) -> Rational {
        match k.to_usize() {
            Some(k) if k < self.row.len() => {
                Rational::new(self.row[k].clone(), self.total().clone())
            }
            _ => Rational::zero(),
        }
    }

    /// `sum_{k <= K} p(n, k)` as an exact rational.
    fn cumulative(&self, k: &Integer) -> Rational {
        if k.is_negative() {
            return Rational::zero();
        }
        let idx = k.to_usize().unwrap_or(usize::MAX).min(self.prefix.len() - 1);
        Rational::new(self.prefix[idx].clone(), self.total().clone())
    }

    fn sigma(&self) -> f64 {
        to_f64(&self.stats.sigma2).sqrt()
    }

    fn llt_gap(&self, grid: &[Rational]) -> f64 {
        let sigma = self.sigma();
        grid.iter()
            .map(|x| {
                let p = to_f64(&self.mass(&self.floor_at(x)));
                (sigma * p - gaussian_density(to_f64(x))).abs()
            })
            .fold(0.0, f64::max)
    }

    fn clt_gap(&self, grid: &[Rational]) -> f64 {
        grid.iter()
            .map(|x| {
                let p = to_f64(&self.cumulative(&self.floor_at(x)));
                (p - gaussian_cdf(to_f64(x))).abs()
            })
            .fold(0.0, f64::max)
    }
}

fn check_grid(grid: &[Rational]) -> Result<()> {
    let four = Rational::from_integer(4.into());
    if grid.iter().any(|x| x.abs() > four) {
        return Err(Error::InvalidArgument("grid points must lie in [-4, 4]".into()));
    }
    Ok(())
}

/// `max_x |sigma_n p(n, floor(mu_n + x sigma_n)) - phi(x)|` over the grid.
pub fn llt_gap(n: usize, grid: &[Rational]) -> Result<f64> {
    check_grid(grid)?;
    Ok(RowDistribution::new(n)?.llt_gap(grid))
}

/// `max_x |sum_{k <= mu_n + x sigma_n} p(n, k) - Phi(x)|` over the grid.
pub fn clt_gap(n: usize, grid: &[Rational]) -> Result<f64> {
    check_grid(grid)?;
    Ok(RowDistribution::new(n)?.clt_gap(grid))
}

/// `sigma_n p(n, floor(mu_n))`, which tends to `1 / sqrt(2 pi)`.
pub fn peak_density(n: usize) -> Result<f64> {
    let d = RowDistribution::new(n)?;
    Ok(d.sigma() * to_f64(&d.mass(&d.floor_at(&Rational::zero()))))
}

/// Diagnostics for one `n` of a ladder.
#[derive(Clone, Debug, Serialize)]
pub struct LadderEntry {
    pub n: usize,
    #[serde(flatten)]
    pub stats: MomentStats,
    pub mu_display: f64,
    pub sigma2_display: f64,
    pub variance_ratio_display: f64,
    pub llt_gap: f64,
    pub clt_gap: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct LadderReport {
    pub entries: Vec<LadderEntry>,
    /// Both gaps strictly decrease along the ladder.
    pub gaps_decreasing: bool,
    /// `sigma_n^2` strictly increases along the ladder.
    pub variance_increasing: bool,
}

impl LadderReport {
    pub fn passed(&self) -> bool {
        self.gaps_decreasing && self.variance_increasing
    }
}

/// Local and central limit gaps for each `n` in `ladder` (ascending).
pub fn limit_ladder(ladder: &[usize], grid: &[Rational]) -> Result<LadderReport> {
    check_grid(grid)?;
    if ladder.is_empty() || ladder.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("ladder must be nonempty and strictly increasing".into()));
    }
    let entries: Vec<LadderEntry> = ladder
        .par_iter()
        .map(|&n| {
            let d = RowDistribution::new(n)?;
            let sigma2_display = to_f64(&d.stats.sigma2);
            Ok(LadderEntry {
                n,
                mu_display: to_f64(&d.stats.mu),
                sigma2_display,
                variance_ratio_display: 18.0 * sigma2_display / n as f64,
                llt_gap: d.llt_gap(grid),
                clt_gap: d.clt_gap(grid),
                stats: d.stats,
            })
        })
        .collect::<Result<_>>()?;
    let decreasing =
        |f: fn(&LadderEntry) -> f64| entries.windows(2).all(|w| f(&w[1]) < f(&w[0]));
    let gaps_decreasing = decreasing(|e| e.llt_gap) && decreasing(|e| e.clt_gap);
    let variance_increasing = entries.windows(2).all(|w| w[1].stats.sigma2 > w[0].stats.sigma2);
    Ok(LadderReport {
        entries,
        gaps_decreasing,
        variance_increasing,
    })
}

/// Checks `moment_stats(n)` against the closed forms for `1 <= n <= max_n`;
/// returns the first mismatch.
pub fn verify_closed_forms(max_n: usize) -> Result<()> {
    let t = central_trinomials(max_n);
    (1..=max_n).into_par_iter().try_for_each(|n| {
        let direct = moment_stats(n);
        let closed = moment_stats_closed(n, &t);
        if direct != closed {
            return Err(Error::violation(
                format!("closed-form moments at n = {n}"),
                format!("{}, {}", direct.mu, direct.sigma2),
                format!("{}, {}", closed.mu, closed.sigma2),
            ));
        }
        Ok(())
    })
}
