use num_traits::{Signed, ToPrimitive};
use proptest::prelude::*;
use trinomia::aigner::{hankel_det, verify_fundamental_upto, RecursiveSpec};
use trinomia::kernel::{basis_change, pow, rational};
use trinomia::limits::{floor_mu_plus_x_sigma, moment_stats, moment_stats_closed, central_trinomials};
use trinomia::positivity::{log_convex_check, sm_check, SmVerdict};
use trinomia::realroots::{count_real_roots, isolate_roots, strictly_interlaces};
use trinomia::riordan::{binomial_transform, extract_az};
use trinomia::aigner::recursive_matrix;
use trinomia::seqgen::{tbc_by_series, tbc_number_direct, tbc_sequence, trinomial_expand_oracle};
use trinomia::{BiPoly, Rational, Ring, UniPoly};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| rational(n, d))
}

fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..=20, 1i64..=6).prop_map(|(n, d)| rational(n, d))
}

/// `prod (x - r)` for the given roots.
fn from_roots(roots: &[Rational]) -> UniPoly {
    roots.iter().fold(UniPoly::constant(rational(1, 1)), |acc, r| {
        acc * UniPoly::new(vec![-r.clone(), rational(1, 1)])
    })
}

/// Distinct rationals with denominators at most 4, sorted ascending.
fn distinct_roots(max: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::btree_set(-40i64..=40, 1..=max)
        .prop_map(|s| s.into_iter().map(|k| rational(k, 4)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generators_agree_on_rationals(b in small_rational(), c in small_rational(), n in 0usize..=14) {
        let seq = tbc_sequence(&b, &c, n);
        prop_assert_eq!(&seq[n], &tbc_number_direct(&b, &c, n));
        prop_assert_eq!(&seq[n], &trinomial_expand_oracle(&b, &c, n));
        prop_assert_eq!(&seq[n], &tbc_by_series(&b, &c, n)[n]);
    }

    #[test]
    fn hankel_determinants_are_closed_form(b in small_rational(), c in small_rational(), n in 0usize..=6) {
        let seq = tbc_sequence(&b, &c, 2 * n);
        let expected = pow(&rational(2, 1), n as u64) * pow(&c, (n * (n + 1) / 2) as u64);
        prop_assert_eq!(hankel_det(&seq, n).unwrap(), expected);
    }

    #[test]
    fn binomial_transform_on_rationals(a in small_rational(), b in small_rational(), c in small_rational(), n in 0usize..=12) {
        prop_assert!(binomial_transform(&b, &c, &a, n).is_ok());
    }

    #[test]
    fn log_convex_iff_threshold(b in 1i64..=12, c in 1i64..=40) {
        let seq = tbc_sequence(&rational(b, 1), &rational(c, 1), 11);
        let report = log_convex_check(&seq).unwrap();
        prop_assert_eq!(report.log_convex, b * b >= 2 * c);
    }

    #[test]
    fn discrete_measures_are_never_rejected(
        atoms in proptest::collection::vec((0i64..=6, 1i64..=5), 1..=4),
    ) {
        // moments sum_i w_i x_i^k of a measure on [0, inf)
        let seq: Vec<Rational> = (0..=13u64)
            .map(|k| atoms.iter().fold(rational(0, 1), |acc, &(x, w)| acc + rational(w, 1) * pow(&rational(x, 1), k)))
            .collect();
        let report = sm_check(&seq, 6).unwrap();
        prop_assert!(!matches!(report.result, SmVerdict::NotSm { .. }), "{:?}", report.result);
    }

    #[test]
    fn real_rooted_products_are_counted(roots in distinct_roots(7)) {
        let f = from_roots(&roots);
        prop_assert_eq!(count_real_roots(&f).unwrap(), roots.len());
        let width = rational(1, 64);
        let iv = isolate_roots(&f, &width).unwrap();
        prop_assert_eq!(iv.len(), roots.len());
        // largest root first, each interval (lo, hi] holds its root
        for ((lo, hi), r) in iv.intervals.iter().zip(roots.iter().rev()) {
            prop_assert!(lo < r && r <= hi);
            prop_assert!(hi - lo <= width.clone());
        }
    }

    #[test]
    fn squares_are_not_squarefree(roots in distinct_roots(3)) {
        let f = from_roots(&roots);
        prop_assert!(isolate_roots(&(f.clone() * f), &rational(1, 8)).is_err());
    }

    #[test]
    fn midpoints_interlace(roots in distinct_roots(6)) {
        prop_assume!(roots.len() >= 2);
        let mids: Vec<Rational> = roots.windows(2).map(|w| (&w[0] + &w[1]) / rational(2, 1)).collect();
        let f = from_roots(&roots);
        let g = from_roots(&mids);
        prop_assert!(strictly_interlaces(&g, &f).unwrap());
        // shifting every root of g past the next root of f breaks it
        let shifted: Vec<Rational> = roots.iter().skip(1).map(|r| r + rational(1, 8)).collect();
        prop_assert!(!strictly_interlaces(&from_roots(&shifted), &f).unwrap());
    }

    #[test]
    fn tbc_recursive_matrix_has_fixed_az(b in 1i64..=9, c in 1i64..=9) {
        let (b, c) = (rational(b, 1), rational(c, 1));
        let az = extract_az(&recursive_matrix(&RecursiveSpec::tbc(&b, &c), 8)).unwrap();
        prop_assert_eq!(az.a_seq, vec![rational(1, 1), b.clone(), c.clone()]);
        prop_assert_eq!(az.z_seq, vec![b, c.clone() + &c]);
    }

    #[test]
    fn fundamental_theorem_numeric(b in small_rational(), c in positive_rational()) {
        prop_assert!(verify_fundamental_upto(&RecursiveSpec::tbc(&b, &c), 10).unwrap().passed());
        prop_assert!(verify_fundamental_upto(&RecursiveSpec::motzkin(&b, &c), 10).unwrap().passed());
    }

    #[test]
    fn floor_matches_float(mu in -500i64..=500, s2 in 1i64..=400, x in -16i64..=16) {
        let (mu_q, s2_q, x_q) = (rational(mu, 3), rational(s2, 7), rational(x, 4));
        let k = floor_mu_plus_x_sigma(&mu_q, &s2_q, &x_q);
        let approx = mu as f64 / 3.0 + x as f64 / 4.0 * (s2 as f64 / 7.0).sqrt();
        let k = k.to_f64().unwrap();
        prop_assert!(k <= approx + 1e-9 && approx < k + 1.0 + 1e-9, "{} vs {}", k, approx);
    }

    #[test]
    fn basis_change_round_trips(b_exp in 0u32..=6, c_exp in 0u32..=4, k in 1i64..=9, m in 1u32..=2) {
        // b^(2e) c^f and b^(2e+1) c^f are single-parity polynomials
        let p = BiPoly::monomial(b_exp, c_exp, k) + BiPoly::monomial(b_exp % 2, c_exp + b_exp / 2, 1);
        let form = basis_change(&p, m).unwrap();
        prop_assert_eq!(form.reconstruct(m), p);
    }
}

#[test]
fn moment_closed_forms_match_direct_sums() {
    let t = central_trinomials(202);
    for n in [2usize, 3, 10, 57, 200] {
        assert_eq!(moment_stats(n), moment_stats_closed(n, &t));
    }
}

#[test]
fn mean_is_near_a_third() {
    for n in [300usize, 900] {
        let s = moment_stats(n);
        let ratio = (s.mu / rational(n as i64, 1) - rational(1, 3)).abs();
        assert!(ratio < rational(1, 100), "n = {n}");
    }
}

#[test]
fn symbolic_ring_generators_agree() {
    let (b, c) = (BiPoly::b(), BiPoly::c());
    for n in 0..=10 {
        assert_eq!(tbc_number_direct(&b, &c, n), trinomial_expand_oracle(&b, &c, n));
    }
    assert!(BiPoly::from_i64(3).eval(&rational(1, 1), &rational(1, 1)) == rational(3, 1));
}
