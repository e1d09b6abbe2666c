//! Acceptance gate: one line per criterion, exit status 1 if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{Signed, ToPrimitive};
use trinomia::aigner::{hankel_det, shifted_hankel_det, verify_fundamental_upto, RecursiveSpec};
use trinomia::kernel::{pow, rational};
use trinomia::limits::{default_grid, limit_ladder, moment_stats, ratio_gap};
use trinomia::positivity::{
    contiguous_tp2, is_tp, j_leading_minors, tbc_criteria, SmVerdict, TridiagSpec,
};
use trinomia::realroots::verify_fisk;
use trinomia::riordan::{
    binomial_transform, extract_az, gf_from_az, motzkin_quadratic_residual, riordan_matrix,
};
use trinomia::seqgen::{
    tbc_by_series, tbc_number, tbc_number_direct, tbc_sequence, tbc_triangle, tnk_triangle,
    trinomial_expand_oracle,
};
use trinomia::structure::{extract_fn, integer_coeffs, motzkin_suite, verify_tli};
use trinomia::{BiPoly, Integer, Rational, Ring, UniPoly};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(n: i64) -> Rational {
    rational(n, 1)
}

fn sym() -> (BiPoly, BiPoly) {
    (BiPoly::b(), BiPoly::c())
}

fn grid() -> Vec<(i64, i64)> {
    (1..=6).flat_map(|b| (1..=6).map(move |c| (b, c))).collect()
}

fn poly(coeffs: &[i64]) -> UniPoly {
    UniPoly::from_integers(coeffs.iter().copied())
}

fn generators_agree<R: Ring>(b: &R, c: &R, max_n: usize) -> Result<(), String> {
    let series = tbc_by_series(b, c, max_n);
    let seq = tbc_sequence(b, c, max_n);
    for n in 0..=max_n {
        let value = tbc_number(b, c, n);
        for (label, other) in [
            ("direct", tbc_number_direct(b, c, n)),
            ("expansion", trinomial_expand_oracle(b, c, n)),
            ("series", series[n].clone()),
            ("recurrence", seq[n].clone()),
        ] {
            ensure(value == other, || format!("n={n} b={b} c={c}: {label} gives {other}, expected {value}"))?;
        }
    }
    Ok(())
}

fn generator_agreement() -> Outcome {
    let (b, c) = sym();
    generators_agree(&b, &c, 15)?;
    ensure(
        tbc_number(&b, &c, 6).to_string() == "b^6 + 30*b^4*c + 90*b^2*c^2 + 20*c^3",
        || "T_6(b,c) differs from the expansion oracle".into(),
    )?;
    for (b, c) in grid() {
        generators_agree(&q(b), &q(c), 50)?;
    }
    let central: Vec<i64> = vec![1, 1, 3, 7, 19, 51, 141, 393, 1107, 3139, 8953];
    ensure(tbc_sequence(&q(1), &q(1), 10) == central.iter().map(|&v| q(v)).collect::<Vec<_>>(), || {
        "central trinomial coefficients differ".into()
    })?;
    let t32: Vec<i64> = vec![1, 3, 13, 63, 321, 1683, 8989, 48639];
    ensure(tbc_sequence(&q(3), &q(2), 7) == t32.iter().map(|&v| q(v)).collect::<Vec<_>>(), || {
        "T_n(3,2) differs".into()
    })?;
    Ok("symbolic n <= 15, 36 grid points n <= 50".into())
}

/// `2^n c^{n(n+1)/2}`.
fn hankel_closed<R: Ring>(c: &R, n: usize) -> R {
    pow(&R::from_i64(2), n as u64) * pow(c, (n * (n + 1) / 2) as u64)
}

fn hankel_identity() -> Outcome {
    let (b, c) = sym();
    let seq = tbc_sequence(&b, &c, 13);
    for n in 0..=6 {
        let det = hankel_det(&seq, n).map_err(|e| e.to_string())?;
        ensure(det == hankel_closed(&c, n), || format!("symbolic n={n}: {det}"))?;
    }
    for (bv, cv) in grid() {
        let (b, c) = (q(bv), q(cv));
        let seq = tbc_sequence(&b, &c, 21);
        for n in 0..=10 {
            let det = hankel_det(&seq, n).map_err(|e| e.to_string())?;
            ensure(det == hankel_closed(&c, n), || format!("b={b} c={c} n={n}: {det}"))?;
        }
    }
    Ok("symbolic n <= 6, numeric n <= 10 on 36 points".into())
}

fn shifted_hankel_identity() -> Outcome {
    let (b, c) = sym();
    let seq = tbc_sequence(&b, &c, 18);
    let u = j_leading_minors(&b, &c, 8).map_err(|e| e.to_string())?;
    ensure(u[0].to_string() == "b", || format!("u_0 = {}", u[0]))?;
    ensure(u[1].to_string() == "b^2 - 2*c", || format!("u_1 = {}", u[1]))?;
    ensure(u[2].to_string() == "b^3 - 3*b*c", || format!("u_2 = {}", u[2]))?;
    for (n, un) in u.iter().enumerate() {
        let det = shifted_hankel_det(&seq, n).map_err(|e| e.to_string())?;
        let expected = hankel_closed(&c, n) * un;
        ensure(det == expected, || format!("n={n}: {det} != {expected}"))?;
    }
    Ok("symbolic n <= 8".into())
}

fn interlacing() -> Outcome {
    let report = verify_fisk(60).map_err(|e| e.to_string())?;
    ensure(report.entries.len() == 61, || format!("{} entries", report.entries.len()))?;
    match report.first_failure {
        None => Ok("G_n real-rooted and interlacing for n <= 60".into()),
        Some(n) => Err(format!("fails at n={n}")),
    }
}

fn total_positivity() -> Outcome {
    let tu = tnk_triangle(8).to_matrix(8);
    let result = is_tp(&tu, 8);
    if let Some(f) = &result.failure {
        return Err(format!("minor rows {:?} cols {:?} = {}", f.rows, f.cols, f.value));
    }
    for (b, c) in grid() {
        let tp2 = contiguous_tp2(&TridiagSpec::new(q(b), q(c)).matrix(10)).is_none();
        ensure(tp2 == (b * b >= 2 * c), || format!("J TP2 verdict {tp2} at b={b} c={c}"))?;
    }
    Ok(format!("{} minors of TU nonnegative; J grid matches", result.minors_checked))
}

fn criteria_equivalence() -> Outcome {
    for (b, c) in grid() {
        let r = tbc_criteria(&q(b), &q(c)).map_err(|e| e.to_string())?;
        ensure(r.consistent, || format!("inconsistent at b={b} c={c}"))?;
        ensure(r.log_convex == (b * b >= 2 * c) && r.sm == (b * b >= 4 * c), || {
            format!("closed-form verdicts wrong at b={b} c={c}")
        })?;
    }
    let boundary = tbc_criteria(&q(2), &q(1)).map_err(|e| e.to_string())?;
    ensure(boundary.empirical_sm == SmVerdict::Sm, || format!("(2,1) gives {:?}", boundary.empirical_sm))?;
    Ok("36 points consistent, (2,1) is SM".into())
}

fn parity_factorization() -> Outcome {
    let report = verify_tli(14).map_err(|e| e.to_string())?;
    let expected = (1..=13usize).map(|i| (i..=14 - i).count()).sum::<usize>();
    ensure(report.entries.len() == expected, || {
        format!("{} pairs, expected {expected}", report.entries.len())
    })?;
    match report.first_failure() {
        None => Ok(format!("{} pairs with i + j <= 14", report.entries.len())),
        Some(e) => Err(format!("(i,j)=({},{}): {:?}", e.i, e.j, e.failure)),
    }
}

fn gap_polynomials() -> Outcome {
    let frozen = [
        poly(&[1]),
        poly(&[0, 1]),
        poly(&[4, 1, 1]),
        poly(&[14, 18, 3, 1]),
        poly(&[100, 108, 52, 6, 1]),
    ];
    for n in 0..=10 {
        let f = extract_fn(n).map_err(|e| format!("n={n}: {e}"))?;
        ensure(f.degree() == Some(n), || format!("f_{n} has degree {:?}", f.degree()))?;
        let coeffs = integer_coeffs(&f);
        ensure(coeffs[n] == Integer::from(1), || format!("f_{n} is not monic"))?;
        ensure(coeffs.iter().all(|a| !a.is_negative()), || format!("f_{n} = {f}"))?;
        if let Some(want) = frozen.get(n) {
            ensure(&f == want, || format!("f_{n} = {f}, expected {want}"))?;
        }
    }
    Ok("f_n monic, nonnegative for n <= 10; f_2 = x^2 + x + 4".into())
}

fn binomial_identity() -> Outcome {
    let (b, c) = sym();
    for a in 1..=3 {
        for n in 0..=15 {
            binomial_transform(&b, &c, &BiPoly::from(a), n).map_err(|e| format!("a={a} n={n}: {e}"))?;
        }
    }
    Ok("a in {1,2,3}, n <= 15".into())
}

fn riordan_identification() -> Outcome {
    let (b, c) = sym();
    let tri = tbc_triangle(&b, &c, 12);
    let az = extract_az(&tri).map_err(|e| e.to_string())?;
    ensure(az.a_seq == vec![BiPoly::from(1), b.clone(), c.clone()], || {
        format!("A = {:?}", az.a_seq.iter().map(ToString::to_string).collect::<Vec<_>>())
    })?;
    ensure(az.z_seq == vec![b.clone(), c.clone() + &c], || {
        format!("Z = {:?}", az.z_seq.iter().map(ToString::to_string).collect::<Vec<_>>())
    })?;
    let gf = gf_from_az(&az, 12).map_err(|e| e.to_string())?;
    ensure(riordan_matrix(&gf).map_err(|e| e.to_string())? == tri, || "round trip differs".into())?;
    let residual = motzkin_quadratic_residual(gf.f());
    ensure(residual.order() >= 12, || format!("residual only to order {}", residual.order()))?;
    ensure(residual.coeffs().iter().all(|r| *r == BiPoly::from(0)), || "nonzero residual".into())?;
    Ok("A = (1,b,c), Z = (b,2c), round trip and residual at depth 12".into())
}

fn fundamental_theorem() -> Outcome {
    let (b, c) = sym();
    let report = verify_fundamental_upto(&RecursiveSpec::tbc(&b, &c), 20).map_err(|e| e.to_string())?;
    ensure(report.passed(), || format!("{report:?}"))?;
    Ok(format!("{} pairs with m + n <= 20", report.pairs_checked))
}

fn limit_witnessing() -> Outcome {
    let gap = ratio_gap(5000) * q(3);
    ensure(gap <= rational(1, 500), || format!("3 x ratio gap = {}", gap.to_f64().unwrap_or(f64::NAN)))?;

    let s = moment_stats(2000);
    let dev = (s.sigma2 * rational(18, 2000) - q(1)).abs();
    ensure(dev <= rational(1, 50), || format!("|18 sigma^2/n - 1| = {}", dev.to_f64().unwrap_or(f64::NAN)))?;

    let ladder = limit_ladder(&[200, 800, 3200], &default_grid()).map_err(|e| e.to_string())?;
    let gaps: Vec<(f64, f64)> = ladder.entries.iter().map(|e| (e.llt_gap, e.clt_gap)).collect();
    ensure(ladder.gaps_decreasing, || format!("gaps {gaps:?}"))?;
    let clt = ladder.entries[2].clt_gap;
    ensure(clt <= 0.05, || format!("CLT gap {clt} at n=3200"))?;
    Ok(format!(
        "ratio {:.2e}, variance {:.2e}, LLT {:.4}/{:.4}/{:.4}, CLT {:.4}",
        gap.to_f64().unwrap_or(f64::NAN),
        dev.to_f64().unwrap_or(f64::NAN),
        gaps[0].0,
        gaps[1].0,
        gaps[2].0,
        clt
    ))
}

fn motzkin_identities() -> Outcome {
    let report = motzkin_suite(12).map_err(|e| e.to_string())?;
    ensure(report.items.len() == 5, || format!("{} items", report.items.len()))?;
    match report.items.iter().find(|i| !i.passed) {
        None => Ok("items (i)-(v) for n <= 12".into()),
        Some(i) => Err(format!("({}) {:?}", i.item, i.failure)),
    }
}

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn criteria() -> Vec<Criterion> {
    let secs = |s| Some(Duration::from_secs(s));
    vec![
        Criterion { id: 1, title: "generator cross-agreement", limit: secs(30), run: generator_agreement },
        Criterion { id: 2, title: "Hankel determinants", limit: secs(10), run: hankel_identity },
        Criterion { id: 3, title: "shifted Hankel determinants", limit: None, run: shifted_hankel_identity },
        Criterion { id: 4, title: "real roots and interlacing", limit: secs(60), run: interlacing },
        Criterion { id: 5, title: "total positivity", limit: secs(10), run: total_positivity },
        Criterion { id: 6, title: "log-convexity and Stieltjes criteria", limit: None, run: criteria_equivalence },
        Criterion { id: 7, title: "parity factorization", limit: secs(60), run: parity_factorization },
        Criterion { id: 8, title: "gap polynomials f_n", limit: None, run: gap_polynomials },
        Criterion { id: 9, title: "binomial transform", limit: None, run: binomial_identity },
        Criterion { id: 10, title: "Riordan identification", limit: None, run: riordan_identification },
        Criterion { id: 11, title: "recursive matrix fundamental theorem", limit: None, run: fundamental_theorem },
        Criterion { id: 12, title: "limit witnessing", limit: secs(120), run: limit_witnessing },
        Criterion { id: 13, title: "Motzkin identities", limit: None, run: motzkin_identities },
    ]
}

fn main() -> ExitCode {
    let mut failed = 0;
    for c in criteria() {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took longer than {limit:?}")),
            (o, _) => o,
        };
        let (verdict, detail) = match &outcome {
            Ok(d) => ("pass", d),
            Err(d) => ("FAIL", d),
        };
        if outcome.is_err() {
            failed += 1;
        }
        println!("[{:>2}] {:<40} {verdict}  {:>7.2}s  {detail}", c.id, c.title, elapsed.as_secs_f64());
    }
    println!("acceptance: {} of 13 criteria pass", 13 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
