//! Verification suites behind `verify` and `report all`.

use std::fmt;

use clap::ValueEnum;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};
use trinomia::aigner::{
    check_fundamental_on, delta_weights, hankel_det, recursive_matrix, shifted_hankel_det,
    RecursiveSpec,
};
use trinomia::kernel::{pow, rational};
use trinomia::limits::{
    default_grid, identity_2plus1, limit_ladder, moment_stats, ratio_gap, verify_closed_forms,
};
use trinomia::positivity::{
    contiguous_tp2, criteria_on, finite_pf_check, is_tp, j_leading_minors, sm_check, tbc_criteria, SmVerdict,
    TridiagSpec, CRITERIA_SM_DEPTH,
};
use trinomia::realroots::verify_fisk_with;
use trinomia::report::{CheckRecord, Verdict};
use trinomia::riordan::{
    binomial_transform, extract_az, gf_from_az, motzkin_quadratic_residual, motzkin_riordan,
    riordan_matrix, tbc_riordan,
};
use trinomia::seqgen::{row_poly, tbc_by_series, tbc_sequence, tnk_row, tnk_triangle, TriangleMatrix};
use trinomia::structure::{
    admissible_check, extract_gap_poly, hankel_symbolic, integer_coeffs, j_symbolic, l_matrix,
    motzkin_suite, verify_chain, verify_hankel_parity,
};
use trinomia::{BiPoly, Error, Integer, Matrix, Rational, Ring, UniPoly};

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum Suite {
    Hankel,
    Interlace,
    Tp,
    Sm,
    Criteria,
    Riordan,
    Binomial,
    Tli,
    Motzkin,
    Limits,
    Fundamental,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Hankel,
        Suite::Interlace,
        Suite::Tp,
        Suite::Sm,
        Suite::Criteria,
        Suite::Riordan,
        Suite::Binomial,
        Suite::Tli,
        Suite::Motzkin,
        Suite::Limits,
        Suite::Fundamental,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Hankel => "hankel",
            Suite::Interlace => "interlace",
            Suite::Tp => "tp",
            Suite::Sm => "sm",
            Suite::Criteria => "criteria",
            Suite::Riordan => "riordan",
            Suite::Binomial => "binomial",
            Suite::Tli => "tli",
            Suite::Motzkin => "motzkin",
            Suite::Limits => "limits",
            Suite::Fundamental => "fundamental",
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum Profile {
    Quick,
    Full,
}

/// Invalid parameters for a suite.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<Error> for UsageError {
    fn from(e: Error) -> Self {
        UsageError(e.to_string())
    }
}

/// Suite parameters; `None` selects the documented default.
#[derive(Clone, Debug, Default)]
pub struct Params {
    pub n: Option<usize>,
    pub rows: Option<usize>,
    pub max_n: Option<usize>,
    pub max_sum: Option<usize>,
    pub b: Option<Rational>,
    pub c: Option<Rational>,
    pub a: Option<Rational>,
    pub depth: Option<usize>,
    pub symbolic: bool,
    pub n_ladder: Option<Vec<usize>>,
    /// Corrupt the suite input so that its checks must fail.
    pub fault: bool,
}

type SuiteResult = Result<Vec<CheckRecord>, UsageError>;

fn sym() -> (BiPoly, BiPoly) {
    (BiPoly::b(), BiPoly::c())
}

fn grid() -> Vec<(Rational, Rational)> {
    (1..=6)
        .flat_map(|b| (1..=6).map(move |c| (rational(b, 1), rational(c, 1))))
        .collect()
}

/// The `(b, c)` pairs to check: the given pair or the grid `{1..6}^2`.
fn pairs(p: &Params) -> Vec<(Rational, Rational)> {
    if p.b.is_none() && p.c.is_none() {
        grid()
    } else {
        let one = rational(1, 1);
        vec![(p.b.clone().unwrap_or_else(|| one.clone()), p.c.clone().unwrap_or(one))]
    }
}

fn require_positive(b: &Rational, c: &Rational) -> Result<(), UsageError> {
    if !b.is_positive() || !c.is_positive() {
        return Err(UsageError("--b and --c must be positive".into()));
    }
    Ok(())
}

fn at_least(name: &str, value: usize, min: usize) -> Result<usize, UsageError> {
    if value < min {
        return Err(UsageError(format!("{name} must be at least {min}")));
    }
    Ok(value)
}

fn strings<R: fmt::Display>(v: &[R]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

/// A record for a library call that can fail with a theorem violation.
fn guarded(name: String, f: impl FnOnce() -> trinomia::Result<CheckRecord>) -> CheckRecord {
    f().unwrap_or_else(|e| CheckRecord::error(name, e))
}

/// Suites whose input `--inject-fault` can corrupt.
pub fn supports_fault(suite: Suite) -> bool {
    !matches!(suite, Suite::Binomial | Suite::Motzkin | Suite::Limits)
}

pub fn run_suite(suite: Suite, p: &Params) -> SuiteResult {
    if p.fault && !supports_fault(suite) {
        return Err(UsageError(format!("--inject-fault is not available for {}", suite.name())));
    }
    match suite {
        Suite::Hankel => hankel(p),
        Suite::Interlace => interlace(p),
        Suite::Tp => tp(p),
        Suite::Sm => sm(p),
        Suite::Criteria => criteria(p),
        Suite::Riordan => riordan(p),
        Suite::Binomial => binomial(p),
        Suite::Tli => tli(p),
        Suite::Motzkin => motzkin(p),
        Suite::Limits => limits(p),
        Suite::Fundamental => fundamental(p),
    }
}

/// `2^n c^{n(n+1)/2}`.
fn hankel_closed_form<R: Ring>(c: &R, n: usize) -> R {
    pow(&R::from_i64(2), n as u64) * pow(c, (n * (n + 1) / 2) as u64)
}

#[derive(Serialize)]
struct Comparison {
    n: usize,
    expected: String,
    computed: String,
    equal: bool,
}

/// Hankel and shifted-Hankel determinants of `seq` against the closed
/// forms, for orders `0..=n` and `0..=shifted_n`.
fn hankel_comparisons<R: Ring>(
    seq: &[R],
    c: &R,
    u: &[R],
    n: usize,
    shifted_n: usize,
) -> trinomia::Result<(Vec<Comparison>, Vec<Comparison>)> {
    let plain = (0..=n)
        .map(|k| {
            let expected = hankel_closed_form(c, k);
            let computed = hankel_det(seq, k)?;
            Ok(Comparison {
                n: k,
                equal: expected == computed,
                expected: expected.to_string(),
                computed: computed.to_string(),
            })
        })
        .collect::<trinomia::Result<Vec<_>>>()?;
    let shifted = (0..=shifted_n)
        .map(|k| {
            let expected = hankel_closed_form(c, k) * &u[k];
            let computed = shifted_hankel_det(seq, k)?;
            Ok(Comparison {
                n: k,
                equal: expected == computed,
                expected: expected.to_string(),
                computed: computed.to_string(),
            })
        })
        .collect::<trinomia::Result<Vec<_>>>()?;
    Ok((plain, shifted))
}

fn hankel(p: &Params) -> SuiteResult {
    let mut out = Vec::new();
    let symbolic_part = p.symbolic || (p.b.is_none() && p.c.is_none());
    if symbolic_part {
        let n = p.n.unwrap_or(6);
        let sd = p.depth.unwrap_or(8);
        let (b, c) = sym();
        let mut seq = tbc_sequence(&b, &c, 2 * n.max(sd) + 2);
        if p.fault {
            seq[2] = seq[2].clone() + BiPoly::one();
        }
        let params = json!({ "b": "b", "c": "c", "n": n, "depth": sd });
        let u = j_leading_minors(&b, &c, sd)?;
        let (plain, shifted) = hankel_comparisons(&seq, &c, &u, n, sd)?;
        for (label, list) in [("hankel", plain), ("shifted-hankel", shifted)] {
            for cmp in list {
                let mut rec = CheckRecord::check(format!("{label} symbolic n={}", cmp.n), cmp.equal, &cmp)
                    .with_params(&params);
                if !cmp.equal {
                    rec = rec.with_witness(json!({ "expected": cmp.expected, "computed": cmp.computed }));
                }
                out.push(rec);
            }
        }
    }
    if !p.symbolic {
        let n = p.n.unwrap_or(10);
        for (b, c) in pairs(p) {
            let mut seq = tbc_sequence(&b, &c, 2 * n + 2);
            if p.fault {
                seq[2] = seq[2].clone() + rational(1, 1);
            }
            let name = format!("hankel numeric b={b} c={c}");
            let params = json!({ "b": b.to_string(), "c": c.to_string(), "n": n });
            out.push(guarded(name.clone(), || {
                let u = j_leading_minors(&b, &c, n)?;
                let (plain, shifted) = hankel_comparisons(&seq, &c, &u, n, n)?;
                let bad = plain.iter().map(|x| ("hankel", x)).chain(shifted.iter().map(|x| ("shifted-hankel", x))).find(|(_, x)| !x.equal);
                let mut rec = CheckRecord::check(name, bad.is_none(), json!({ "orders_checked": n + 1 }))
                    .with_params(&params);
                if let Some((kind, x)) = bad {
                    rec = rec.with_witness(json!({ "kind": kind, "n": x.n, "expected": x.expected, "computed": x.computed }));
                }
                Ok(rec)
            }));
        }
    }
    Ok(out)
}

fn interlace(p: &Params) -> SuiteResult {
    let max_n = at_least("--max-n", p.max_n.unwrap_or(60), 2)?;
    let mut polys: Vec<UniPoly> = (0..=max_n + 1).map(row_poly).collect();
    if p.fault {
        polys[4] = UniPoly::from_integers([1, 1, 6]);
    }
    let report = verify_fisk_with(&polys)?;
    let params = json!({ "max_n": max_n });
    let mut out: Vec<CheckRecord> = report
        .entries
        .iter()
        .map(|e| {
            let rec = CheckRecord::check(format!("G_{}", e.n), e.passed(), e).with_params(&params);
            if e.passed() {
                rec
            } else {
                rec.with_witness(json!({
                    "n": e.n,
                    "real_rooted": e.real_rooted,
                    "interlaces_next": e.interlaces_next,
                    "interlaces_skip": e.interlaces_skip,
                }))
            }
        })
        .collect();
    let pf_rows = max_n.min(40);
    let bad_row = (0..=pf_rows).find(|&n| !finite_pf_check(&tnk_row(n)).unwrap_or(false));
    let mut rec = CheckRecord::check("rows of TU are PF", bad_row.is_none(), json!({ "rows_checked": pf_rows + 1 }))
        .with_params(&params);
    if let Some(n) = bad_row {
        rec = rec.with_witness(json!({ "row": n }));
    }
    out.push(rec);
    Ok(out)
}

fn tp(p: &Params) -> SuiteResult {
    let rows = at_least("--rows", p.rows.unwrap_or(8), 1)?;
    let order = at_least("--depth", p.depth.unwrap_or(rows), 1)?;
    let tu = tnk_triangle(rows).to_matrix(rows);
    let tu = if p.fault {
        Matrix::from_fn(rows.max(2), rows.max(2), |i, j| {
            if (i, j) == (0, 1) {
                Integer::from(5)
            } else if i < rows && j < rows {
                tu.get(i, j).clone()
            } else {
                Integer::from((i == j) as i64)
            }
        })
    } else {
        tu
    };
    let result = is_tp(&tu, order);
    let params = json!({ "rows": rows, "max_order": order });
    let mut rec = CheckRecord::check(format!("TU {rows}x{rows} minors of order <= {order}"), result.passed(), &result)
        .with_params(&params);
    if let Some(f) = &result.failure {
        rec = rec.with_witness(f);
    }
    let mut out = vec![rec];

    #[derive(Serialize)]
    struct J {
        b: String,
        c: String,
        tp2: bool,
        expected: bool,
    }
    let j: Vec<J> = pairs(p)
        .into_iter()
        .map(|(b, c)| {
            let tp2 = contiguous_tp2(&TridiagSpec::new(b.clone(), c.clone()).matrix(10)).is_none();
            let expected = &b * &b >= &c * rational(2, 1);
            J { b: b.to_string(), c: c.to_string(), tp2, expected }
        })
        .collect();
    let bad = j.iter().find(|x| x.tp2 != x.expected).map(|x| json!({ "b": x.b, "c": x.c, "tp2": x.tp2 }));
    let mut rec = CheckRecord::check("J is TP2 iff b^2 >= 2c", bad.is_none(), &j);
    if let Some(w) = bad {
        rec = rec.with_witness(w);
    }
    out.push(rec);
    Ok(out)
}

fn sm(p: &Params) -> SuiteResult {
    let b = p.b.clone().unwrap_or_else(|| rational(2, 1));
    let c = p.c.clone().unwrap_or_else(|| rational(1, 1));
    require_positive(&b, &c)?;
    let depth = p.depth.unwrap_or(10);
    let mut seq = tbc_sequence(&b, &c, 2 * depth + 1);
    if p.fault {
        seq[1] = Rational::zero();
    }
    let report = sm_check(&seq, depth)?;
    let theorem = &b * &b >= rational(4, 1) * &c;
    let verdict = match &report.result {
        SmVerdict::Sm => Verdict::from_bool(theorem),
        SmVerdict::NotSm { .. } => Verdict::from_bool(!theorem),
        SmVerdict::Inconclusive { .. } => Verdict::Inconclusive,
    };
    let mut rec = CheckRecord::new(
        format!("T_n({b},{c}) is SM iff b^2 >= 4c"),
        verdict,
        json!({ "b^2 >= 4c": theorem, "report": report }),
    )
    .with_params(json!({ "b": b.to_string(), "c": c.to_string(), "depth": depth }));
    if verdict == Verdict::Fail {
        rec = rec.with_witness(&report.result);
    }
    Ok(vec![rec])
}

fn criteria(p: &Params) -> SuiteResult {
    pairs(p)
        .into_iter()
        .map(|(b, c)| {
            require_positive(&b, &c)?;
            let r = if p.fault {
                let mut seq = tbc_sequence(&b, &c, 2 * CRITERIA_SM_DEPTH + 1);
                seq[2] = &seq[2] * rational(4, 1);
                criteria_on(&b, &c, &seq)?
            } else {
                tbc_criteria(&b, &c)?
            };
            let rec = CheckRecord::check(format!("criteria b={b} c={c}"), r.consistent, &r)
                .with_params(json!({ "b": b.to_string(), "c": c.to_string() }));
            Ok(if r.consistent {
                rec
            } else {
                rec.with_witness(json!({
                    "log_convex": r.log_convex,
                    "empirical_log_convex": r.empirical_log_convex.log_convex,
                    "sm": r.sm,
                    "empirical_sm": r.empirical_sm,
                    "j_tp2": r.j_tp2,
                }))
            })
        })
        .collect()
}

fn identity_record(name: &str, lhs: Value, rhs: Value, params: &Value) -> CheckRecord {
    let equal = lhs == rhs;
    let rec = CheckRecord::check(name, equal, json!({ "lhs": lhs, "rhs": rhs, "equal": equal }))
        .with_params(params);
    if equal {
        rec
    } else {
        rec.with_witness(json!({ "lhs": lhs, "rhs": rhs }))
    }
}

fn poly_list(v: &[BiPoly]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

fn riordan(p: &Params) -> SuiteResult {
    let depth = at_least("--depth", p.depth.unwrap_or(12), 2)?;
    let (b, c) = sym();
    let params = json!({ "depth": depth });
    let mut tri = recursive_matrix(&RecursiveSpec::tbc(&b, &c), depth);
    if p.fault {
        let mut rows = tri.rows().to_vec();
        rows[depth][0] = rows[depth][0].clone() + BiPoly::one();
        tri = TriangleMatrix::from_rows(rows);
    }
    let mut out = Vec::new();
    let expected_az = json!({
        "a": poly_list(&[BiPoly::one(), b.clone(), c.clone()]),
        "z": poly_list(&[b.clone(), c.clone() + &c]),
    });
    let az = match extract_az(&tri) {
        Ok(az) => az,
        Err(e) => return Ok(vec![CheckRecord::error("Tbc A/Z sequences", e).with_params(&params)]),
    };
    out.push(identity_record(
        "Tbc A/Z sequences",
        json!({ "a": poly_list(&az.a_seq), "z": poly_list(&az.z_seq) }),
        expected_az,
        &params,
    ));
    match gf_from_az(&az, depth).and_then(|gf| Ok((riordan_matrix(&gf)?, gf))) {
        Ok((rebuilt, gf)) => {
            let series = tbc_by_series(&b, &c, depth);
            let residual = motzkin_quadratic_residual(gf.f());
            out.push(CheckRecord::check(
                "Tbc round trip through (g, f)",
                rebuilt == tri,
                json!({ "depth": depth }),
            ));
            out.push(CheckRecord::check(
                "g = 1/sqrt(1 - 2bx + (b^2-4c)x^2)",
                gf.g().coeffs() == series.as_slice(),
                json!({ "g": poly_list(gf.g().coeffs()) }),
            ));
            out.push(CheckRecord::check(
                "c x^2 f^2 - (1 - bx) f + 1 = 0",
                residual.coeffs().iter().all(Zero::is_zero),
                json!({ "f": poly_list(gf.f().coeffs()) }),
            ));
        }
        Err(e) => out.push(CheckRecord::error("Tbc round trip through (g, f)", e)),
    }
    out.push(guarded("R(T(x), M(x)) equals the recursive matrix".into(), || {
        let closed = riordan_matrix(&tbc_riordan(depth))?;
        Ok(CheckRecord::check("R(T(x), M(x)) equals the recursive matrix", closed == tri, json!({ "depth": depth })))
    }));
    out.push(guarded("Mbc A/Z sequences".into(), || {
        let mbc = recursive_matrix(&RecursiveSpec::motzkin(&b, &c), depth);
        let az = extract_az(&mbc)?;
        let closed = riordan_matrix(&motzkin_riordan(depth))?;
        let lhs = json!({ "a": poly_list(&az.a_seq), "z": poly_list(&az.z_seq), "riordan_route_equal": closed == mbc });
        let rhs = json!({
            "a": poly_list(&[BiPoly::one(), b.clone(), c.clone()]),
            "z": poly_list(&[b.clone(), c.clone()]),
            "riordan_route_equal": true,
        });
        Ok(identity_record("Mbc A/Z sequences", lhs, rhs, &params))
    }));
    for r in out.iter_mut() {
        if r.params.is_null() {
            r.params = params.clone();
        }
    }
    Ok(out)
}

fn binomial(p: &Params) -> SuiteResult {
    let n = p.n.unwrap_or(15);
    let numeric = p.b.is_some() || p.c.is_some();
    let mut out = Vec::new();
    if p.symbolic {
        if numeric || p.a.is_some() {
            return Err(UsageError("--symbolic takes no --a, --b or --c".into()));
        }
        let (b, c) = sym();
        // both sides have degree m in a, so a = 0..=m decides the identity
        let bad = (0..=n).find_map(|m| {
            (0..=m as i64).find_map(|a| binomial_transform(&b, &c, &BiPoly::from(a), m).err().map(|e| (m, a, e)))
        });
        let mut rec = CheckRecord::check(
            "sum C(n,k) T_k(b,c) a^(n-k) = T_n(a+b,c) for symbolic a, b, c",
            bad.is_none(),
            json!({ "max_n": n, "points_per_n": "a = 0..=n" }),
        )
        .with_params(json!({ "n": n, "a": "a", "b": "b", "c": "c" }));
        if let Some((m, a, e)) = bad {
            rec = rec.with_witness(json!({ "n": m, "a": a, "error": e.to_string() }));
        }
        out.push(rec);
        return Ok(out);
    }
    let a_values = match &p.a {
        Some(a) => vec![a.clone()],
        None => vec![rational(1, 1), rational(2, 1), rational(3, 1)],
    };
    for a in a_values {
        let name = format!("binomial transform a={a}");
        let (bad, params) = if numeric {
            let one = rational(1, 1);
            let b = p.b.clone().unwrap_or_else(|| one.clone());
            let c = p.c.clone().unwrap_or(one);
            let bad = (0..=n).find_map(|m| binomial_transform(&b, &c, &a, m).err().map(|e| (m, e)));
            (bad, json!({ "n": n, "a": a.to_string(), "b": b.to_string(), "c": c.to_string() }))
        } else {
            if !a.is_integer() {
                return Err(UsageError("a fractional --a needs numeric --b and --c".into()));
            }
            let a_poly = BiPoly::from(a.to_integer());
            let (b, c) = sym();
            let bad = (0..=n).find_map(|m| binomial_transform(&b, &c, &a_poly, m).err().map(|e| (m, e)));
            (bad, json!({ "n": n, "a": a.to_string(), "b": "b", "c": "c" }))
        };
        let mut rec = CheckRecord::check(name, bad.is_none(), json!({ "max_n": n })).with_params(params);
        if let Some((m, e)) = bad {
            rec = rec.with_witness(json!({ "n": m, "error": e.to_string() }));
        }
        out.push(rec);
    }
    Ok(out)
}

fn tli(p: &Params) -> SuiteResult {
    let max_sum = at_least("--max-sum", p.max_sum.unwrap_or(14), 2)?;
    let max_n = p.max_n.unwrap_or(10);
    let size = at_least("--depth", p.depth.unwrap_or(8), 2)?;
    let (b, c) = sym();
    let mut seq = tbc_sequence(&b, &c, (max_sum + 1).max(max_n + 2));
    if p.fault {
        seq[2] = seq[2].clone() + &b;
    }
    let params = json!({ "max_sum": max_sum, "max_n": max_n, "depth": size });
    let report = verify_hankel_parity(&seq, 2, max_sum)?;
    let mut out: Vec<CheckRecord> = report
        .entries
        .iter()
        .map(|e| {
            let rec = CheckRecord::check(
                format!("T_{}T_{} - T_{}T_{}", e.i - 1, e.j + 1, e.i, e.j),
                e.failure.is_none(),
                json!({ "i": e.i, "j": e.j, "parity": e.parity, "f": e.f }),
            )
            .with_params(&params);
            match &e.failure {
                None => rec,
                Some(why) => rec.with_witness(json!({
                    "i": e.i, "j": e.j, "delta": e.delta.to_string(), "reason": why,
                })),
            }
        })
        .collect();
    for n in 0..=max_n {
        let name = format!("f_{n}");
        out.push(match extract_gap_poly(&seq, n, 2, 2) {
            Ok(f) => CheckRecord::check(
                name,
                true,
                json!({ "n": n, "f": f.to_string(), "coeffs": strings(&integer_coeffs(&f)) }),
            ),
            Err(e) => CheckRecord::error(name, e),
        }
        .with_params(&params));
    }
    for (name, mat) in [
        ("J", j_symbolic(size)),
        ("Tbc", l_matrix(size - 1)),
        ("H", hankel_symbolic(size)),
    ] {
        let r = admissible_check(name, &mat, 2);
        let mut rec = CheckRecord::check(
            format!("{name} {size}x{size} parity-admissible"),
            r.passed(),
            json!({ "minors_checked": r.minors.len() }),
        )
        .with_params(&params);
        if let Some(f) = r.first_failure() {
            rec = rec.with_witness(f);
        }
        out.push(rec);
    }
    let chain_n = size.min(7) - 1;
    out.extend(match verify_chain(chain_n) {
        Ok(steps) => steps
            .iter()
            .map(|s| CheckRecord::check(format!("L_{} = L*_{} J*_{}", s.n + 1, s.n, s.n), s.passed(), s).with_params(&params))
            .collect(),
        Err(e) => vec![CheckRecord::error("product chain", e)],
    });
    Ok(out)
}

fn motzkin(p: &Params) -> SuiteResult {
    let max_n = at_least("--max-n", p.max_n.unwrap_or(12), 2)?;
    let report = motzkin_suite(max_n)?;
    Ok(report
        .items
        .iter()
        .map(|item| {
            let rec = CheckRecord::check(format!("({}) {}", item.item, item.statement), item.passed, item)
                .with_params(json!({ "max_n": max_n }));
            match &item.failure {
                Some(f) => rec.with_witness(f),
                None => rec,
            }
        })
        .collect())
}

fn limits(p: &Params) -> SuiteResult {
    let ladder = p.n_ladder.clone().unwrap_or_else(|| vec![200, 800, 3200]);
    let ratio_n = at_least("--n", p.n.unwrap_or(5000), 2)?;
    let max_n = at_least("--max-n", p.max_n.unwrap_or(2000), 2)?;
    let params = json!({ "n_ladder": ladder, "n": ratio_n, "max_n": max_n });
    let grid = default_grid();
    let report = limit_ladder(&ladder, &grid)?;
    let last = report.entries.last().expect("nonempty ladder");
    let mut out = vec![
        CheckRecord::check(
            "local and central limit gaps decrease along the ladder",
            report.passed(),
            &report,
        ),
        CheckRecord::check(
            format!("central limit gap <= 0.05 at n={}", last.n),
            last.clt_gap <= 0.05,
            json!({ "clt_gap": last.clt_gap }),
        ),
    ];

    let gap = ratio_gap(ratio_n);
    let scaled = &gap * rational(3, 1);
    out.push(CheckRecord::check(
        format!("|3 T_(n-1)/T_n - 1| <= 0.002 at n={ratio_n}"),
        scaled <= rational(1, 500),
        json!({ "value": scaled.to_string(), "value_display": to_f64(&scaled) }),
    ));

    let variance_n = 2000;
    let s = moment_stats(variance_n);
    let dev = (&s.sigma2 * rational(18, variance_n as i64) - rational(1, 1)).abs();
    out.push(CheckRecord::check(
        format!("|18 sigma^2/n - 1| <= 0.02 at n={variance_n}"),
        dev <= rational(1, 50),
        json!({ "sigma2": s.sigma2.to_string(), "deviation_display": to_f64(&dev) }),
    ));

    let ns: Vec<usize> = (1..=20).map(|k| 100 * k).collect();
    let variances: Vec<Rational> = ns.iter().map(|&n| moment_stats(n).sigma2).collect();
    out.push(CheckRecord::check(
        "sigma_n^2 increases over n = 100, 200, ..., 2000",
        variances.windows(2).all(|w| w[1] > w[0]) && variances[0].is_positive(),
        json!({ "n": ns, "sigma2_display": variances.iter().map(to_f64).collect::<Vec<_>>() }),
    ));

    let means: Vec<(usize, Rational)> = [500, 1000, 2000]
        .iter()
        .map(|&n| (n, moment_stats(n).mu / rational(n as i64, 1)))
        .collect();
    out.push(CheckRecord::check(
        "mu_n / n in (0.30, 0.34) for n = 500, 1000, 2000",
        means.iter().all(|(_, r)| *r > rational(3, 10) && *r < rational(34, 100)),
        json!(means.iter().map(|(n, r)| json!({ "n": n, "ratio": r.to_string(), "ratio_display": to_f64(r) })).collect::<Vec<_>>()),
    ));

    out.push(match verify_closed_forms(max_n) {
        Ok(()) => CheckRecord::check("moments match closed forms", true, json!({ "max_n": max_n })),
        Err(e) => CheckRecord::error("moments match closed forms", e),
    });
    let bad = (2..=30).find_map(|n| identity_2plus1(n).err().map(|e| (n, e)));
    let mut rec = CheckRecord::check("G''(1) + G'(1) = n(n-1) T_(n-2)", bad.is_none(), json!({ "n": "2..=30" }));
    if let Some((n, e)) = bad {
        rec = rec.with_witness(json!({ "n": n, "error": e.to_string() }));
    }
    out.push(rec);
    for r in out.iter_mut() {
        r.params = params.clone();
    }
    Ok(out)
}

fn to_f64(q: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
}

fn fundamental(p: &Params) -> SuiteResult {
    let max_sum = p.max_sum.unwrap_or(20);
    let (b, c) = sym();
    let spec = RecursiveSpec::tbc(&b, &c);
    let mut r = recursive_matrix(&spec, max_sum);
    if p.fault && max_sum >= 3 {
        let mut rows = r.rows().to_vec();
        rows[3][1] = rows[3][1].clone() + BiPoly::one();
        r = TriangleMatrix::from_rows(rows);
    }
    let report = check_fundamental_on(&r, &delta_weights(&spec, max_sum), max_sum)?;
    let mut rec = CheckRecord::check(
        "sum_k r_(m,k) r_(n,k) delta_k = r_(m+n,0) and H = R D R^t",
        report.passed(),
        &report,
    )
    .with_params(json!({ "max_sum": max_sum }));
    if let Some((m, n)) = report.first_failure {
        rec = rec.with_witness(json!({ "m": m, "n": n }));
    } else if !report.matrix_form {
        rec = rec.with_witness("H differs from R D R^t");
    }
    Ok(vec![rec])
}

/// Parameters used by `report all` for each suite.
pub fn profile_params(profile: Profile, suite: Suite) -> Params {
    let mut p = Params::default();
    if profile == Profile::Full {
        return p;
    }
    match suite {
        Suite::Hankel => {
            p.n = Some(4);
            p.depth = Some(6);
        }
        Suite::Interlace => p.max_n = Some(20),
        Suite::Tp => p.rows = Some(6),
        Suite::Sm | Suite::Criteria => {}
        Suite::Riordan => p.depth = Some(8),
        Suite::Binomial => p.n = Some(10),
        Suite::Tli => {
            p.max_sum = Some(8);
            p.max_n = Some(6);
            p.depth = Some(6);
        }
        Suite::Motzkin => p.max_n = Some(8),
        Suite::Limits => {
            p.n_ladder = Some(vec![200, 800]);
            p.n = Some(1000);
            p.max_n = Some(300);
        }
        Suite::Fundamental => p.max_sum = Some(12),
    }
    p
}

/// Runs `suites` with the profile's parameters, prefixing each check name
/// with its suite.
pub fn report_all(profile: Profile, suites: &[Suite]) -> SuiteResult {
    let mut out = Vec::new();
    for &suite in suites {
        let records = run_suite(suite, &profile_params(profile, suite))?;
        out.extend(records.into_iter().map(|mut r| {
            r.name = format!("{}: {}", suite.name(), r.name);
            r
        }));
    }
    Ok(out)
}
