use proptest::prelude::*;
use rug::Float;

use regular_partitions::hrr::{
    big_r, choose_precision, delta_k, evaluate, HrrParams, HrrSeries, Truncation, TruncationPolicy,
};
use regular_partitions::numtheory::{gcd, is_squarefree};
use regular_partitions::qseries::oracle_prs;
use regular_partitions::Error;

fn squarefree_pair(max: u64) -> impl Strategy<Value = (u64, u64)> {
    (2..max, 2..max).prop_filter("square-free coprime", |(r, s)| {
        r < s && gcd(*r, *s) == 1 && is_squarefree(*r) && is_squarefree(*s)
    })
}

#[test]
fn larger_pairs_match_oracle() {
    for (r, s, n) in [
        (14, 15, 500),
        (17, 19, 300),
        (21, 22, 260),
        (2, 3, 1000),
        (5, 7, 777),
    ] {
        let rep = evaluate(
            &HrrParams::new(r, s, n).unwrap(),
            &TruncationPolicy::default().with_oracle(),
        )
        .unwrap();
        assert!(rep.oracle_checked, "({r},{s},{n})");
        assert!(rep.diagnostics.realness_violations.is_empty());
    }
}

#[test]
fn table_prefix_is_a_prefix() {
    let series = HrrSeries::new(14, 15).unwrap();
    let short = series.partial_sums(500, 11, Some(300)).unwrap();
    let long = series.partial_sums(500, 30, Some(300)).unwrap();
    assert_eq!(&long[..11], &short[..]);
}

#[test]
fn window_that_cannot_settle_fails_loudly() {
    let params = HrrParams::new(14, 15, 500).unwrap();
    let policy = TruncationPolicy {
        truncation: Truncation::Window {
            initial: 3,
            window: 3,
            max: 3,
        },
        ..Default::default()
    };
    let err = evaluate(&params, &policy).unwrap_err();
    assert!(matches!(err, Error::NotConverged { n_max: 3, .. }), "{err}");
}

#[test]
fn fixed_policy_reports_without_judging() {
    let params = HrrParams::new(14, 15, 500).unwrap();
    let rep = evaluate(&params, &TruncationPolicy::fixed(3)).unwrap();
    assert_eq!(rep.n_used, 3);
    assert_ne!(rep.value.to_string(), "310093947025073675623");
}

#[test]
fn large_products_carry_a_warning() {
    let rep = evaluate(
        &HrrParams::new(17, 19, 300).unwrap(),
        &TruncationPolicy::default(),
    )
    .unwrap();
    assert!(rep
        .diagnostics
        .warnings
        .iter()
        .any(|w| w.contains("validated range")));
    let rep = evaluate(
        &HrrParams::new(14, 15, 500).unwrap(),
        &TruncationPolicy::default(),
    )
    .unwrap();
    assert!(rep.diagnostics.warnings.is_empty());
}

#[test]
fn precision_override_is_reported() {
    let params = HrrParams::new(5, 6, 200).unwrap();
    let rep = evaluate(&params, &TruncationPolicy::default().with_precision(400)).unwrap();
    assert_eq!(rep.precision_bits, 400);
    assert_eq!(rep.value, oracle_prs(5, 6, 200));
}

#[test]
fn trace_matches_final_sum() {
    let params = HrrParams::new(3, 7, 90).unwrap();
    let rep = evaluate(&params, &TruncationPolicy::default().with_trace()).unwrap();
    let trace = rep.partial_sums.as_ref().unwrap();
    assert_eq!(trace.len() as u64, rep.n_used);
    assert_eq!(trace.last().unwrap().1, rep.sum);
    assert!(trace.windows(2).all(|w| w[1].0 == w[0].0 + 1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn series_matches_oracle((r, s) in squarefree_pair(16), extra in 1u64..600) {
        let n = big_r(r, s).floor().numer().to_u64().unwrap() + extra;
        let rep = evaluate(&HrrParams::new(r, s, n).unwrap(), &TruncationPolicy::default()).unwrap();
        prop_assert_eq!(rep.value, oracle_prs(r, s, n));
        prop_assert!(rep.residual < 0.5);
    }

    #[test]
    fn adaptive_and_uniform_agree((r, s) in squarefree_pair(16), extra in 1u64..200) {
        let n = big_r(r, s).floor().numer().to_u64().unwrap() + extra;
        let series = HrrSeries::new(r, s).unwrap();
        let a = series.evaluate(n, &TruncationPolicy::default()).unwrap();
        let u = series.evaluate(n, &TruncationPolicy::default().uniform_precision()).unwrap();
        prop_assert_eq!(&a.value, &u.value);
        prop_assert_eq!(a.n_used, u.n_used);
        prop_assert!(Float::with_val(64, &a.sum - &u.sum).abs() < 1e-8);
    }

    #[test]
    fn precision_stability((r, s) in squarefree_pair(16), extra in 1u64..200) {
        let n = big_r(r, s).floor().numer().to_u64().unwrap() + extra;
        let params = HrrParams::new(r, s, n).unwrap();
        let series = HrrSeries::new(r, s).unwrap();
        let bits = choose_precision(&params, 64);
        let a = series.evaluate(n, &TruncationPolicy::fixed(64).with_precision(bits));
        let b = series.evaluate(n, &TruncationPolicy::fixed(64).with_precision(bits + 64));
        if let (Ok(a), Ok(b)) = (a, b) {
            let tol = Float::with_val(64, a.sum.abs_ref()) * Float::with_val(64, Float::i_exp(1, -32));
            prop_assert!(Float::with_val(bits + 64, &a.sum - &b.sum).abs() <= tol);
        }
    }

    #[test]
    fn delta_depends_on_gcds_only((r, s) in squarefree_pair(40), k in 1u64..5000) {
        prop_assert_eq!(delta_k(r, s, k), delta_k(r, s, k + r * s));
        prop_assert!(delta_k(r, s, k) <= big_r(r, s));
    }
}
