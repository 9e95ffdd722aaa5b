//! Rademacher's series for the unrestricted partition function:
//!
//! ```text
//! p(n) = 2 pi / (24 n - 1)^(3/4) * sum_k A_k(n) / k * I_{3/2}(pi sqrt(24 n - 1) / (6 k))
//! ```

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::bessel::bessel_i32;
use crate::bigfloat::{format_sci, pi, round_to_integer, BigComplex};
use crate::error::{Error, Result};
use crate::hrr::{Diagnostics, SeriesReport, StabilityTracker, TruncationPolicy};
use crate::numtheory::{dedekind_sum, gcd, Phase};
use crate::qseries::partition_numbers;

/// Stability window of the default policy.
pub const WINDOW: u64 = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RademacherParams {
    pub n: u64,
    pub precision_bits: u32,
}

impl RademacherParams {
    pub fn new(n: u64, precision_bits: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "Rademacher's series needs n >= 1".into(),
            ));
        }
        Ok(RademacherParams { n, precision_bits })
    }
}

/// `A_k(n) = sum_{0 <= h < k, (h,k)=1} omega(h,k) exp(-2 pi i n h / k)` as a
/// complex number; every phase is exact until the final exponential.
pub fn a_k_complex(n: u64, k: u64, prec: u32) -> Result<BigComplex> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let wp = prec + 16;
    let mut sum = BigComplex::zero(wp);
    let h_range = if k == 1 { 0..1 } else { 1..k };
    for h in h_range {
        if gcd(h, k) != 1 {
            continue;
        }
        let theta = dedekind_sum(h as i128, k)? - Rational::from((2 * (n % k) * h, k));
        sum = sum.add(&Phase::new(theta).to_complex(wp));
    }
    Ok(sum.with_prec(prec))
}

/// Real value of `A_k(n)`.
pub fn a_k(n: u64, k: u64, prec: u32) -> Result<Float> {
    Ok(a_k_complex(n, k, prec)?.re)
}

/// `log2 p(n)` estimate plus `10 log2(N + 2) + 96` guard bits.
pub fn choose_precision(n: u64, n_terms: u64) -> u32 {
    let magnitude = std::f64::consts::LOG2_E * std::f64::consts::PI * (2.0 * n as f64 / 3.0).sqrt();
    magnitude.ceil() as u32 + (10.0 * ((n_terms + 2) as f64).log2()).ceil() as u32 + 96
}

/// `(initial, window, max)` of the default policy: start at
/// `max(ceil(4 sqrt n), 24)`, require 24 stable terms, stop by `64 ceil(sqrt n)`.
pub fn default_plan(n: u64) -> (u64, u64, u64) {
    let root = (n as f64).sqrt().ceil() as u64;
    let initial = (4 * root).max(WINDOW);
    (initial, WINDOW, (64 * root).max(initial))
}

struct Prepared {
    prec: u32,
    scale: Float,
    sqrt_24n: Float,
    pi: Float,
}

fn prepare(n: u64, prec: u32) -> Prepared {
    let wp = prec + 16;
    let m = Integer::from(24 * n - 1);
    let pi = pi(wp);
    let sqrt_24n = Float::with_val(wp, &m).sqrt();
    let pow = Float::with_val(wp, &m).pow(Float::with_val(wp, 0.75));
    let scale = Float::with_val(wp, &pi * 2u32) / pow;
    Prepared {
        prec: wp,
        scale,
        sqrt_24n,
        pi,
    }
}

fn term_with(n: u64, k: u64, p: &Prepared, diag: &mut Diagnostics) -> Result<Float> {
    let a = a_k_complex(n, k, p.prec)?;
    let ratio = Float::with_val(64, a.im.abs_ref()) / (Float::with_val(64, a.re.abs_ref()) + 1u32);
    diag.max_imag_ratio = diag.max_imag_ratio.max(ratio.to_f64());
    if ratio > Float::with_val(64, Float::i_exp(1, -(p.prec as i32) / 2)) {
        diag.realness_violations.push((k, 0));
    }
    // (pi / k) sqrt(2/3 (n - 1/24)) = pi sqrt(24 n - 1) / (6 k)
    let x = Float::with_val(p.prec, &p.pi * &p.sqrt_24n) / (6 * k);
    let bessel = bessel_i32(&x, p.prec)?;
    Ok(Float::with_val(p.prec, &p.scale * a.re) * bessel / k)
}

/// The `k`-th term of the series at precision `prec`.
pub fn term(n: u64, k: u64, prec: u32) -> Result<Float> {
    RademacherParams::new(n, prec)?;
    let p = prepare(n, prec);
    let t = term_with(n, k, &p, &mut Diagnostics::default())?;
    Ok(Float::with_val(prec, t))
}

/// Partial sum through `k = n_terms`, rounded; fails if the residual is
/// still `>= 1/2`.
pub fn evaluate_p(n: u64, n_terms: u64, prec: u32) -> Result<SeriesReport> {
    evaluate_with(n, &TruncationPolicy::fixed(n_terms).with_precision(prec))
}

/// Evaluate `p(n)` under a truncation policy; `Truncation::Default` uses
/// [`default_plan`]. Fails like [`crate::hrr::HrrSeries::evaluate`].
pub fn evaluate_with(n: u64, policy: &TruncationPolicy) -> Result<SeriesReport> {
    let (report, settled) = sum_terms(n, policy)?;
    if !settled || report.residual >= 0.5 {
        return Err(Error::NotConverged {
            n_max: report.n_used,
            residual: format_sci(&report.residual, 6),
        });
    }
    let mut report = report;
    if policy.oracle_check {
        let oracle = partition_numbers(n as usize)[n as usize].clone();
        if oracle != report.value {
            return Err(Error::OracleMismatch {
                series: report.value.to_string(),
                oracle: oracle.to_string(),
            });
        }
        report.oracle_checked = true;
    }
    Ok(report)
}

/// `(N, S_N)` for `1 <= N <= n_max`.
pub fn partial_sums(n: u64, n_max: u64, prec: Option<u32>) -> Result<Vec<(u64, Float)>> {
    let policy = TruncationPolicy {
        precision_bits: prec,
        ..TruncationPolicy::fixed(n_max).with_trace()
    };
    Ok(sum_terms(n, &policy)?.0.partial_sums.unwrap_or_default())
}

fn sum_terms(n: u64, policy: &TruncationPolicy) -> Result<(SeriesReport, bool)> {
    RademacherParams::new(n, 0)?;
    let (def_init, def_window, def_max) = default_plan(n);
    let (initial, window, max) = policy.plan(def_init, def_window, def_max);
    if max == 0 {
        return Err(Error::InvalidArgument("need at least one term".into()));
    }
    let prec = policy
        .precision_bits
        .unwrap_or_else(|| choose_precision(n, max));
    let p = prepare(n, prec);
    let mut diagnostics = Diagnostics::default();
    let mut trace = policy.keep_trace.then(Vec::new);
    let mut total = Float::new(prec);
    let mut tracker = StabilityTracker::default();
    let mut n_used = 0;
    let mut settled = policy.is_fixed();
    for k in 1..=max {
        total += term_with(n, k, &p, &mut diagnostics)?;
        diagnostics.full_terms += 1;
        n_used = k;
        if let Some(tr) = trace.as_mut() {
            tr.push((k, total.clone()));
        }
        let streak = tracker.push(&total);
        if !policy.is_fixed() && k >= initial && streak >= window {
            settled = true;
            break;
        }
    }
    let value = round_to_integer(&total);
    let residual = Float::with_val(prec, &total - &value).abs();
    Ok((
        SeriesReport {
            value,
            n_used,
            sum: total,
            residual,
            partial_sums: trace,
            precision_bits: prec,
            oracle_checked: false,
            diagnostics,
        },
        settled,
    ))
}
