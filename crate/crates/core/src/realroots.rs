//! Exact real-root counting and isolation with Sturm chains, and strict
//! interlacing of real-rooted polynomials.
//!
//! No floating point enters any verdict. Roots are bracketed by rational
//! intervals `(lo, hi]` whose endpoints are never roots; when a bisection
//! midpoint lands on a root it is nudged by a dyadic offset.
//!
//! ```
//! use trinomia::realroots::{is_real_rooted, strictly_interlaces};
//! use trinomia::seqgen::row_poly;
//!
//! assert!(is_real_rooted(&row_poly(9)).unwrap());
//! assert!(strictly_interlaces(&row_poly(3), &row_poly(4)).unwrap());
//! assert!(strictly_interlaces(&row_poly(3), &row_poly(5)).unwrap());
//! ```

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::unipoly::{denom_powers, sign_homogeneous};
use crate::kernel::{Integer, Rational, UniPoly};
use crate::seqgen::row_poly;

/// `f, f', -rem(f, f'), ...`, each element scaled by a positive constant.
#[derive(Clone, Debug)]
pub struct SturmChain {
    polys: Vec<UniPoly>,
    /// Integer coefficients of `polys`, lowest degree first.
    ints: Vec<Vec<Integer>>,
}

impl SturmChain {
    pub fn new(f: &UniPoly) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut polys = vec![f.primitive()];
        let d = f.derivative();
        if !d.is_zero() {
            polys.push(d.primitive());
        }
        while polys.len() >= 2 {
            let n = polys.len();
            let r = polys[n - 2].rem(&polys[n - 1]);
            if r.is_zero() {
                break;
            }
            polys.push((-r).primitive());
        }
        let ints = polys
            .iter()
            .map(|p| p.coeffs().iter().map(|c| c.to_integer()).collect())
            .collect();
        Ok(SturmChain { polys, ints })
    }

    pub fn polys(&self) -> &[UniPoly] {
        &self.polys
    }

    /// Sign changes of the chain at `x`, zeros skipped.
    pub fn variations(&self, x: &Rational) -> usize {
        let q_pows = denom_powers(x, self.ints.first().map_or(0, Vec::len));
        let mut count = 0;
        let mut last = 0i8;
        for p in &self.ints {
            let s = sign_homogeneous(p, x.numer(), &q_pows);
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Distinct roots in `(lo, hi]`; both endpoints must be non-roots.
    pub fn count(&self, lo: &Rational, hi: &Rational) -> usize {
        self.variations(lo) - self.variations(hi)
    }
}

fn check_endpoints(f: &UniPoly, lo: &Rational, hi: &Rational) -> Result<()> {
    if lo >= hi {
        return Err(Error::InvalidArgument("empty interval: lo >= hi".into()));
    }
    if f.eval(lo).is_zero() || f.eval(hi).is_zero() {
        return Err(Error::InvalidArgument(
            "interval endpoint is a root; perturb it".into(),
        ));
    }
    Ok(())
}

/// Number of distinct real roots of `f` in `(lo, hi]`.
pub fn count_roots(f: &UniPoly, lo: &Rational, hi: &Rational) -> Result<usize> {
    let chain = SturmChain::new(f)?;
    check_endpoints(f, lo, hi)?;
    Ok(chain.count(lo, hi))
}

/// Distinct real roots of `f` on the whole line.
pub fn count_real_roots(f: &UniPoly) -> Result<usize> {
    let chain = SturmChain::new(f)?;
    let bound = f.cauchy_bound();
    Ok(chain.count(&-bound.clone(), &bound))
}

/// Real roots counted with multiplicity.
///
/// With `f_0 = f` and `f_{k+1} = gcd(f_k, f_k')`, a root of multiplicity
/// `m` is a root of exactly `f_0, ..., f_{m-1}`, so summing the distinct
/// counts over the chain of gcds counts multiplicities.
pub fn count_real_roots_with_multiplicity(f: &UniPoly) -> Result<usize> {
    let mut cur = f.clone();
    let mut total = 0;
    while cur.degree().unwrap_or(0) > 0 {
        total += count_real_roots(&cur)?;
        cur = cur.gcd(&cur.derivative());
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(total)
}

/// Every root of `f` is real (nonzero constants count as real-rooted).
pub fn is_real_rooted(f: &UniPoly) -> Result<bool> {
    let degree = f.degree().ok_or(Error::ZeroPolynomial)?;
    Ok(count_real_roots_with_multiplicity(f)? == degree)
}

/// Disjoint isolating intervals `(lo, hi]`, one root each, ordered so that
/// interval `i` brackets the `(i+1)`-th largest root.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct RootIntervals {
    #[serde(serialize_with = "serialize_intervals")]
    pub intervals: Vec<(Rational, Rational)>,
}

fn serialize_intervals<S: serde::Serializer>(
    v: &[(Rational, Rational)],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for (lo, hi) in v {
        seq.serialize_element(&(lo.to_string(), hi.to_string()))?;
    }
    seq.end()
}

impl RootIntervals {
    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn max_width(&self) -> Rational {
        self.intervals
            .iter()
            .map(|(lo, hi)| hi - lo)
            .fold(Rational::zero(), |m, w| if w > m { w } else { m })
    }
}

/// A point strictly inside `(lo, hi)` where `f` does not vanish, as close
/// to the midpoint as dyadic nudging allows.
fn split_point(f: &UniPoly, lo: &Rational, hi: &Rational) -> Rational {
    let two = Rational::from_integer(2.into());
    let width = hi - lo;
    let mid = (lo + hi) / &two;
    if f.sign_at(&mid) != 0 {
        return mid;
    }
    let mut offset = width / Rational::from_integer(4.into());
    loop {
        for cand in [&mid + &offset, &mid - &offset] {
            if f.sign_at(&cand) != 0 {
                return cand;
            }
        }
        offset /= &two;
    }
}

struct Isolator {
    f: UniPoly,
    chain: SturmChain,
}

impl Isolator {
    fn new(f: &UniPoly) -> Result<Self> {
        Ok(Isolator {
            f: f.clone(),
            chain: SturmChain::new(f)?,
        })
    }

    fn count(&self, lo: &Rational, hi: &Rational) -> usize {
        self.chain.count(lo, hi)
    }

    /// Isolating intervals in ascending order.
    fn isolate(&self, width: &Rational) -> Vec<(Rational, Rational)> {
        let bound = self.f.cauchy_bound();
        let mut out = Vec::new();
        let mut stack = vec![(-bound.clone(), bound)];
        while let Some((lo, hi)) = stack.pop() {
            let n = self.count(&lo, &hi);
            if n == 0 {
                continue;
            }
            if n == 1 && &(&hi - &lo) <= width {
                out.push((lo, hi));
                continue;
            }
            let mid = split_point(&self.f, &lo, &hi);
            // push upper half first so lower intervals pop first
            stack.push((mid.clone(), hi));
            stack.push((lo, mid));
        }
        out
    }

    /// Halves `(lo, hi]` keeping the root.
    fn bisect(&self, lo: &Rational, hi: &Rational) -> (Rational, Rational) {
        let mid = split_point(&self.f, lo, hi);
        if self.count(lo, &mid) == 1 {
            (lo.clone(), mid)
        } else {
            (mid, hi.clone())
        }
    }
}

fn require_real_squarefree(f: &UniPoly) -> Result<()> {
    let degree = f.degree().ok_or(Error::ZeroPolynomial)?;
    let distinct = count_real_roots(f)?;
    let with_mult = count_real_roots_with_multiplicity(f)?;
    if with_mult < degree {
        return Err(Error::NotRealRooted {
            distinct_real: distinct,
            real_with_multiplicity: with_mult,
            degree,
        });
    }
    if distinct < degree {
        return Err(Error::NotSquarefree);
    }
    Ok(())
}

/// Isolates every root of a real-rooted squarefree `f` to intervals of
/// width at most `width`, largest root first.
pub fn isolate_roots(f: &UniPoly, width: &Rational) -> Result<RootIntervals> {
    if !width.is_positive() {
        return Err(Error::InvalidArgument("width must be positive".into()));
    }
    require_real_squarefree(f)?;
    let mut intervals = Isolator::new(f)?.isolate(width);
    intervals.reverse();
    Ok(RootIntervals { intervals })
}

fn overlaps(a: &(Rational, Rational), b: &(Rational, Rational)) -> bool {
    a.0 < b.1 && b.0 < a.1
}

/// Root labels of `f` and `g` merged in descending order of root value,
/// after refining both isolations until no two intervals overlap. Requires
/// `f`, `g` squarefree, real-rooted and coprime.
fn merged_root_order(g: &UniPoly, f: &UniPoly) -> Result<Vec<char>> {
    let fi = Isolator::new(f)?;
    let gi = Isolator::new(g)?;
    let one = Rational::one();
    let mut fr = fi.isolate(&one);
    let mut gr = gi.isolate(&one);
    loop {
        let mut clash = None;
        'outer: for (i, a) in fr.iter().enumerate() {
            for (j, b) in gr.iter().enumerate() {
                if overlaps(a, b) {
                    clash = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((i, j)) = clash else { break };
        let (a, b) = (&fr[i], &gr[j]);
        if &a.1 - &a.0 >= &b.1 - &b.0 {
            fr[i] = fi.bisect(&a.0, &a.1);
        } else {
            gr[j] = gi.bisect(&b.0, &b.1);
        }
    }
    let mut all: Vec<(Rational, char)> = fr
        .into_iter()
        .map(|(lo, _)| (lo, 'f'))
        .chain(gr.into_iter().map(|(lo, _)| (lo, 'g')))
        .collect();
    all.sort_by(|a, b| b.0.cmp(&a.0));
    Ok(all.into_iter().map(|(_, tag)| tag).collect())
}

/// `g` strictly interlaces `f`:
/// `r_1(f) > r_1(g) > r_2(f) > r_2(g) > ...`, with
/// `deg g <= deg f <= deg g + 1`.
///
/// A constant `a` strictly interlaces `bx + c` (including `b = 0`) when
/// `a > 0`, `b + c > 0` and `b, c >= 0`.
pub fn strictly_interlaces(g: &UniPoly, f: &UniPoly) -> Result<bool> {
    let dg = g.degree().ok_or(Error::ZeroPolynomial)?;
    let df = f.degree().ok_or(Error::ZeroPolynomial)?;
    if !(dg <= df && df <= dg + 1) {
        return Err(Error::DegreeMismatch {
            g: dg as i64,
            f: df as i64,
        });
    }
    if dg == 0 {
        let a = g.coeff(0);
        let (b, c) = (f.coeff(1), f.coeff(0));
        return Ok(a.is_positive() && !b.is_negative() && !c.is_negative() && (b + c).is_positive());
    }
    for p in [f, g] {
        if !is_real_rooted(p)? {
            let distinct = count_real_roots(p)?;
            return Err(Error::NotRealRooted {
                distinct_real: distinct,
                real_with_multiplicity: count_real_roots_with_multiplicity(p)?,
                degree: p.degree().unwrap(),
            });
        }
        if count_real_roots(p)? < p.degree().unwrap() {
            return Ok(false);
        }
    }
    if f.gcd(g).degree() != Some(0) {
        return Ok(false);
    }
    let order = merged_root_order(g, f)?;
    Ok(order
        .iter()
        .enumerate()
        .all(|(i, &tag)| tag == if i % 2 == 0 { 'f' } else { 'g' }))
}

/// For each root `r` of `middle`, a rational point `w` close enough to `r`
/// that `outer_a` and `outer_b` have the same signs at `w` as at `r`;
/// returns the sign pairs. Requires the outer polynomials to be coprime to
/// `middle`.
pub fn signs_at_roots(
    middle: &UniPoly,
    outer_a: &UniPoly,
    outer_b: &UniPoly,
) -> Result<Vec<(i8, i8)>> {
    require_real_squarefree(middle)?;
    let iso = Isolator::new(middle)?;
    let chain_a = outer_a.degree().filter(|&d| d > 0).map(|_| SturmChain::new(outer_a)).transpose()?;
    let chain_b = outer_b.degree().filter(|&d| d > 0).map(|_| SturmChain::new(outer_b)).transpose()?;
    let mut out = Vec::new();
    for (mut lo, mut hi) in iso.isolate(&Rational::one()).into_iter().rev() {
        loop {
            let clear = |chain: &Option<SturmChain>, p: &UniPoly| match chain {
                None => true,
                Some(ch) => {
                    !p.eval(&lo).is_zero() && !p.eval(&hi).is_zero() && ch.count(&lo, &hi) == 0
                }
            };
            if clear(&chain_a, outer_a) && clear(&chain_b, outer_b) {
                break;
            }
            (lo, hi) = iso.bisect(&lo, &hi);
        }
        // no root of either outer polynomial in [lo, hi], so hi is a witness
        out.push((outer_a.sign_at(&hi), outer_b.sign_at(&hi)));
    }
    Ok(out)
}

/// Verdicts for one `n` of the row-polynomial interlacing suite.
#[derive(Clone, Debug, Serialize)]
pub struct FiskEntry {
    pub n: usize,
    pub degree: usize,
    pub real_rooted: bool,
    /// `G_n` strictly interlaces `G_{n+1}`.
    pub interlaces_next: bool,
    /// `G_{n-1}` strictly interlaces `G_{n+1}`; `None` for `n = 0`.
    pub interlaces_skip: Option<bool>,
    /// Largest isolating-interval width for the roots of `G_n` at the
    /// default resolution, as an exact rational string.
    pub isolation_width: String,
}

impl FiskEntry {
    pub fn passed(&self) -> bool {
        self.real_rooted && self.interlaces_next && self.interlaces_skip.unwrap_or(true)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FiskReport {
    pub max_n: usize,
    pub entries: Vec<FiskEntry>,
    pub first_failure: Option<usize>,
}

impl FiskReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Resolution used for the isolation widths reported by [`verify_fisk`].
pub fn fisk_isolation_width() -> Rational {
    Rational::new(1.into(), 1024.into())
}

fn fisk_entry(n: usize, polys: &[UniPoly]) -> Result<FiskEntry> {
    let g = &polys[n];
    let real_rooted = is_real_rooted(g)?;
    let width = if g.degree() > Some(0) && real_rooted {
        isolate_roots(g, &fisk_isolation_width())
            .map(|iv| iv.max_width().to_string())
            .unwrap_or_else(|e| e.to_string())
    } else {
        "0".to_string()
    };
    Ok(FiskEntry {
        n,
        degree: g.degree().unwrap(),
        real_rooted,
        interlaces_next: strictly_interlaces(g, &polys[n + 1]).unwrap_or(false),
        interlaces_skip: (n > 0)
            .then(|| strictly_interlaces(&polys[n - 1], &polys[n + 1]).unwrap_or(false)),
        isolation_width: width,
    })
}

/// Checks, for every `n <= max_n`, that `G_n` is real-rooted, that
/// `G_n` strictly interlaces `G_{n+1}` and that `G_{n-1}` strictly
/// interlaces `G_{n+1}`. A pair that cannot be compared (a member is not
/// real-rooted) counts as not interlacing.
pub fn verify_fisk(max_n: usize) -> Result<FiskReport> {
    if max_n < 2 {
        return Err(Error::InvalidArgument("max_n must be at least 2".into()));
    }
    let polys: Vec<UniPoly> = (0..=max_n + 1).map(row_poly).collect();
    verify_fisk_with(&polys)
}

/// [`verify_fisk`] on an explicit family `polys[0..=max_n+1]`.
pub fn verify_fisk_with(polys: &[UniPoly]) -> Result<FiskReport> {
    if polys.len() < 4 {
        return Err(Error::InvalidArgument("need at least four polynomials".into()));
    }
    let max_n = polys.len() - 2;
    let entries: Vec<FiskEntry> = (0..=max_n)
        .into_par_iter()
        .map(|n| fisk_entry(n, polys))
        .collect::<Result<_>>()?;
    let first_failure = entries.iter().find(|e| !e.passed()).map(|e| e.n);
    Ok(FiskReport {
        max_n,
        entries,
        first_failure,
    })
}
