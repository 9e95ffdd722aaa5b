//! Invariant batteries run by `prs selftest`.
//!
//! Every check compares two independent computations of the same quantity
//! and reports the first disagreement.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::{Float, Rational};

use crate::bessel::{bessel_i1, bessel_i1_trapezoid, bessel_i32, bessel_i32_series};
use crate::bigfloat::BigComplex;
use crate::numtheory::{
    dedekind_sum, eta_transform_check, gcd, is_squarefree, omega_ratio, omega_ratio_closed,
    random_unimodular,
};
use crate::qseries::{euler_product, euler_product_naive};

/// Outcome of one named check: a summary on success, the failure otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub outcome: Result<String, String>,
}

pub const CHECK_NAMES: [&str; 5] = [
    "dedekind-reciprocity",
    "phase-closed-form",
    "eta-transformation",
    "bessel-dual-path",
    "pentagonal-product",
];

/// Run every battery with randomized cases drawn from `seed`. A check whose
/// name equals `inject_fault` is reported as failed without running.
pub fn run_all(seed: u64, inject_fault: Option<&str>) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    CHECK_NAMES
        .iter()
        .map(|&name| {
            if inject_fault == Some(name) {
                return CheckResult {
                    name,
                    outcome: Err("injected fault".into()),
                };
            }
            let outcome = match name {
                "dedekind-reciprocity" => check_reciprocity(200, 200, &mut rng),
                "phase-closed-form" => {
                    let mut pairs = vec![(2, 3), (5, 6), (14, 15)];
                    pairs.extend(random_squarefree_pairs(&mut rng, 2, 30));
                    check_phase_closed_form(&pairs, 36)
                }
                "eta-transformation" => check_eta(&mut rng, 25, 5, 256, 200),
                "bessel-dual-path" => check_bessel(&mut rng, 4),
                _ => check_pentagonal(6, 60),
            };
            CheckResult { name, outcome }
        })
        .collect()
}

fn random_squarefree_pairs<R: Rng>(rng: &mut R, count: usize, max: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    while out.len() < count {
        let r = rng.gen_range(2..max);
        let s = rng.gen_range(r + 1..=max);
        if gcd(r, s) == 1 && is_squarefree(r) && is_squarefree(s) {
            out.push((r, s));
        }
    }
    out
}

/// `s(e,f) + s(f,e) = (e/f + f/e + 1/(ef)) / 12 - 1/4` for every coprime
/// `1 <= e < f <= max_f`, plus `random` pairs below `10^9`.
pub fn check_reciprocity<R: Rng>(max_f: u64, random: usize, rng: &mut R) -> Result<String, String> {
    let check = |e: u64, f: u64| -> Result<(), String> {
        let lhs = dedekind_sum(e as i128, f).map_err(|x| x.to_string())?
            + dedekind_sum(f as i128, e).map_err(|x| x.to_string())?;
        let (ei, fi) = (e as i128, f as i128);
        let rhs = Rational::from((ei * ei + fi * fi + 1, 12 * ei * fi)) - Rational::from((1, 4));
        if lhs == rhs {
            Ok(())
        } else {
            Err(format!("s({e},{f}) + s({f},{e}) = {lhs}, expected {rhs}"))
        }
    };
    let mut count = 0;
    for f in 2..=max_f {
        for e in 1..f {
            if gcd(e, f) == 1 {
                check(e, f)?;
                count += 1;
            }
        }
    }
    for _ in 0..random {
        let (e, f) = loop {
            let e = rng.gen_range(1..1_000_000_000u64);
            let f = rng.gen_range(1..1_000_000_000u64);
            if e != f && gcd(e, f) == 1 {
                break (e.min(f), e.max(f));
            }
        };
        check(e, f)?;
        count += 1;
    }
    Ok(format!("{count} pairs"))
}

/// Closed form of `Omega_{h,k}` against the quotient of Dedekind-sum phases,
/// exact equality for every `(h, k)` with `k <= max_k` (`h = 1` stands for the
/// single residue class when `k = 1`).
pub fn check_phase_closed_form(pairs: &[(u64, u64)], max_k: u64) -> Result<String, String> {
    let mut count = 0;
    for &(r, s) in pairs {
        for k in 1..=max_k {
            for h in 1..k.max(2) {
                if gcd(h, k) != 1 {
                    continue;
                }
                let direct = omega_ratio(h as i64, k, r, s).map_err(|e| e.to_string())?;
                let closed = omega_ratio_closed(h as i64, k, r, s).map_err(|e| e.to_string())?;
                if direct != closed {
                    return Err(format!(
                        "(r,s)=({r},{s}) h={h} k={k}: {direct} vs closed form {closed}"
                    ));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} phases over {} pairs", pairs.len()))
}

/// Eta transformation residual below `1e-50` for random unimodular matrices.
pub fn check_eta<R: Rng>(
    rng: &mut R,
    matrices: usize,
    max_c: i64,
    prec: u32,
    terms: u64,
) -> Result<String, String> {
    let bound = Float::with_val(prec, Float::parse("1e-50").expect("literal"));
    let mut worst = Float::with_val(prec, 0);
    for _ in 0..matrices {
        let (a, b, c, d) = random_unimodular(rng, max_c);
        let tau = BigComplex::from_f64(rng.gen_range(-0.5..0.5), rng.gen_range(0.5..1.2), prec);
        let res = eta_transform_check(a, b, c, d, &tau, terms, prec).map_err(|e| e.to_string())?;
        if res >= bound {
            return Err(format!(
                "({a} {b}; {c} {d}) at tau = {} + {}i: residual {}",
                tau.re,
                tau.im,
                res.to_f64()
            ));
        }
        if res > worst {
            worst = res;
        }
    }
    Ok(format!(
        "{matrices} matrices, worst residual {:.3e}",
        worst.to_f64()
    ))
}

/// Series against quadrature for `I_1`, closed form against series for
/// `I_{3/2}`, agreeing to `2^(8 - prec)` relative.
pub fn check_bessel<R: Rng>(rng: &mut R, random: usize) -> Result<String, String> {
    let mut xs = vec![0.5, 1.0, 5.0, 20.0];
    xs.extend((0..random).map(|_| rng.gen_range(0.1..30.0)));
    let mut count = 0;
    for prec in [64u32, 128, 256] {
        let tol = Float::with_val(prec, Float::i_exp(1, 8 - prec as i32));
        for &x in &xs {
            let xf = Float::with_val(prec, x);
            let pairs = [
                ("I_1", bessel_i1(&xf, prec), bessel_i1_trapezoid(&xf, prec)),
                ("I_3/2", bessel_i32(&xf, prec), bessel_i32_series(&xf, prec)),
            ];
            for (name, a, b) in pairs {
                let (a, b) = (a.map_err(|e| e.to_string())?, b.map_err(|e| e.to_string())?);
                let diff = Float::with_val(prec, &a - &b).abs();
                if diff > Float::with_val(prec, a.abs_ref()) * &tol {
                    return Err(format!("{name}({x}) at {prec} bits: {a} vs {b}"));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} comparisons"))
}

/// Pentagonal expansion of `(x^t;x^t)_inf` against the multiplied-out product.
pub fn check_pentagonal(max_t: u64, max_order: usize) -> Result<String, String> {
    for t in 1..=max_t {
        for order in 0..=max_order {
            if euler_product(t, order) != euler_product_naive(t, order) {
                return Err(format!("t={t} M={order}"));
            }
        }
    }
    Ok(format!("t <= {max_t}, M <= {max_order}"))
}
