//! The convergent series for `p_{r,s}(n)`.
//!
//! ```text
//! p_{r,s}(n) = sum_k sum_{m=0}^{floor(delta_k)} (2 pi A_{k,m}(n) / k)
//!              * sqrt(rk sk (delta_k - m) / (r s (n - R)))
//!              * I_1((4 pi / k) sqrt(rk sk (delta_k - m) (n - R) / (r s)))
//! ```

mod policy;
mod terms;

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use rug::{Float, Integer, Rational};

pub(crate) use policy::StabilityTracker;
pub use policy::{Diagnostics, SeriesReport, Truncation, TruncationPolicy};

pub use crate::bessel::bessel_i1;
use crate::bigfloat::{round_to_integer, BigComplex};
use crate::error::{Error, Result};
use crate::numtheory::{check_rs, gcd, is_squarefree};
use crate::qseries::{default_cmk_order, oracle_prs, CmkCache};
use terms::{magnitude_bound, term_f64, term_full, KData, TermValue, FAST_BOUND};

/// Largest `r*s` for which the default stopping rule has been checked
/// against exact counts (`r, s <= 15`, `n <= 1200`).
pub const VALIDATED_RS: u64 = 210;

/// `R = (r - 1)(s - 1) / 24`.
pub fn big_r(r: u64, s: u64) -> Rational {
    Rational::from(((r - 1) * (s - 1), 24u64))
}

/// `delta_k = (r/rk - rk)(s/sk - sk) / 24` with `rk = gcd(r,k)`, `sk = gcd(s,k)`.
pub fn delta_k(r: u64, s: u64, k: u64) -> Rational {
    terms::delta_for(r, s, gcd(r, k), gcd(s, k))
}

/// Inputs of one evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HrrParams {
    pub r: u64,
    pub s: u64,
    pub n: u64,
    /// Accept `r` or `s` with a repeated prime factor (experimental).
    pub allow_non_squarefree: bool,
}

impl HrrParams {
    pub fn new(r: u64, s: u64, n: u64) -> Result<Self> {
        let p = HrrParams {
            r,
            s,
            n,
            allow_non_squarefree: false,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn non_squarefree(r: u64, s: u64, n: u64) -> Result<Self> {
        let p = HrrParams {
            r,
            s,
            n,
            allow_non_squarefree: true,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        check_rs(self.r, self.s)?;
        if !self.allow_non_squarefree {
            for v in [self.r, self.s] {
                if !is_squarefree(v) {
                    return Err(Error::NotSquareFree { value: v });
                }
            }
        }
        Ok(())
    }

    pub fn big_r(&self) -> Rational {
        big_r(self.r, self.s)
    }

    /// `n - R` as an exact rational, or an error when `n <= R`.
    pub fn n_minus_r(&self) -> Result<Rational> {
        let big_r = self.big_r();
        let gap = Rational::from(Integer::from(self.n) - &big_r);
        if gap <= 0 {
            return Err(Error::NotAboveR {
                n: self.n,
                big_r: big_r.to_string(),
            });
        }
        Ok(gap)
    }

    pub fn is_squarefree_pair(&self) -> bool {
        is_squarefree(self.r) && is_squarefree(self.s)
    }
}

/// Working precision for summing `n_terms` terms:
/// `log2(e) 4 pi sqrt(R (n - R) / (r s)) + 10 log2(N + 2) + 96` bits,
/// enough for the integer part of the dominant `k = 1` term plus guard bits.
pub fn choose_precision(params: &HrrParams, n_terms: u64) -> u32 {
    let big_r = params.big_r().to_f64();
    let gap = (params.n as f64 - big_r).max(0.0);
    let rs = (params.r * params.s) as f64;
    let magnitude =
        std::f64::consts::LOG2_E * 4.0 * std::f64::consts::PI * (big_r * gap / rs).sqrt();
    let growth = 10.0 * ((n_terms + 2) as f64).log2();
    magnitude.ceil() as u32 + growth.ceil() as u32 + 96
}

/// `A_{k,m}(n)` at precision `prec`.
pub fn a_km(params: &HrrParams, k: u64, m: u64, prec: u32) -> Result<BigComplex> {
    HrrSeries::for_params(params)?.a_km(params.n, k, m, prec)
}

/// The `k`-th term at precision `prec`.
pub fn term_k(params: &HrrParams, k: u64, prec: u32) -> Result<Float> {
    HrrSeries::for_params(params)?.term(params.n, k, prec)
}

/// Sum the series under `policy`; see [`HrrSeries::evaluate`].
pub fn evaluate(params: &HrrParams, policy: &TruncationPolicy) -> Result<SeriesReport> {
    HrrSeries::for_params(params)?.evaluate(params.n, policy)
}

/// The series for one `(r, s)`, caching everything that does not depend on
/// `n`: the `c_{m,k}` tables and the per-`k` phase tables.
#[derive(Debug)]
pub struct HrrSeries {
    r: u64,
    s: u64,
    allow_non_squarefree: bool,
    cmk: CmkCache,
    kdata: RwLock<HashMap<u64, Arc<KData>>>,
}

impl HrrSeries {
    pub fn new(r: u64, s: u64) -> Result<Self> {
        Self::for_params(&HrrParams::new(r, s, 0)?)
    }

    pub fn for_params(params: &HrrParams) -> Result<Self> {
        params.validate()?;
        let (r, s) = (params.r, params.s);
        Ok(HrrSeries {
            r,
            s,
            allow_non_squarefree: params.allow_non_squarefree,
            cmk: CmkCache::new(r, s, default_cmk_order(r, s)),
            kdata: RwLock::new(HashMap::new()),
        })
    }

    pub fn params(&self, n: u64) -> HrrParams {
        HrrParams {
            r: self.r,
            s: self.s,
            n,
            allow_non_squarefree: self.allow_non_squarefree,
        }
    }

    fn kdata(&self, k: u64) -> Result<Arc<KData>> {
        if k == 0 {
            return Err(Error::InvalidArgument("k must be positive".into()));
        }
        if let Some(kd) = self.kdata.read().expect("kdata lock").get(&k) {
            return Ok(kd.clone());
        }
        let cmk = self.cmk.get(gcd(self.r, k), gcd(self.s, k))?;
        let kd = Arc::new(KData::build(self.r, self.s, k, cmk)?);
        self.kdata
            .write()
            .expect("kdata lock")
            .insert(k, kd.clone());
        Ok(kd)
    }

    /// `A_{k,m}(n)`; the phase of every summand is assembled exactly and
    /// only `exp(pi i theta)` is rounded.
    pub fn a_km(&self, n: u64, k: u64, m: u64, prec: u32) -> Result<BigComplex> {
        let kd = self.kdata(k)?;
        let m_max = kd.m_max.ok_or_else(|| {
            Error::InvalidArgument(format!(
                "delta_{k} = {} is negative, no m is admissible",
                kd.delta
            ))
        })?;
        if m > m_max {
            return Err(Error::InvalidArgument(format!(
                "m = {m} exceeds floor(delta_{k}) = {m_max}"
            )));
        }
        let unit = terms::unit_sum_full(&kd, m, n, prec);
        let c = Float::with_val(prec, &kd.cmk[m as usize]);
        Ok(unit.scale(&c))
    }

    /// The `k`-th term at precision `prec`, always on the full-precision path.
    /// Exactly zero when `delta_k < 0`.
    pub fn term(&self, n: u64, k: u64, prec: u32) -> Result<Float> {
        let gap = self.params(n).n_minus_r()?;
        let kd = self.kdata(k)?;
        Ok(term_full(&kd, n, &gap, prec)?.value)
    }

    fn term_value(
        &self,
        n: u64,
        k: u64,
        gap: &Rational,
        gap_f64: f64,
        prec: u32,
        adaptive: bool,
    ) -> Result<TermValue> {
        let kd = self.kdata(k)?;
        if adaptive && magnitude_bound(&kd, gap_f64) <= FAST_BOUND {
            Ok(term_f64(&kd, n, gap_f64, prec))
        } else {
            term_full(&kd, n, gap, prec)
        }
    }

    /// Default truncation numbers `(initial, window, max)` for `n`.
    pub fn default_plan(&self, n: u64) -> (u64, u64, u64) {
        let root = (n as f64).sqrt().ceil() as u64;
        let rs = self.r * self.s;
        let initial = (4 * root).max(2 * rs);
        (initial, rs, (64 * root).max(initial))
    }

    /// `(N, S_N)` for `1 <= N <= n_max`, at precision `prec` or the default
    /// precision for `n_max` terms.
    pub fn partial_sums(&self, n: u64, n_max: u64, prec: Option<u32>) -> Result<Vec<(u64, Float)>> {
        let policy = TruncationPolicy {
            precision_bits: prec,
            ..TruncationPolicy::fixed(n_max).with_trace()
        };
        let (report, _) = self.sum_terms(n, &policy)?;
        Ok(report.partial_sums.unwrap_or_default())
    }

    /// Sum the series for `p_{r,s}(n)` in ascending `k` and round.
    ///
    /// Fails with [`Error::NotConverged`] if a windowed policy reaches its
    /// last `N` before the rounded value has settled (or the partial sum sits
    /// exactly halfway between integers), and with [`Error::OracleMismatch`] if an
    /// oracle check was requested and disagrees.
    pub fn evaluate(&self, n: u64, policy: &TruncationPolicy) -> Result<SeriesReport> {
        let (report, settled) = self.sum_terms(n, policy)?;
        if !settled || report.residual >= 0.5 {
            return Err(Error::NotConverged {
                n_max: report.n_used,
                residual: crate::bigfloat::format_sci(&report.residual, 6),
            });
        }
        let mut report = report;
        if policy.oracle_check {
            let oracle = oracle_prs(self.r, self.s, n);
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

    fn sum_terms(&self, n: u64, policy: &TruncationPolicy) -> Result<(SeriesReport, bool)> {
        let params = self.params(n);
        let gap = params.n_minus_r()?;
        let gap_f64 = gap.to_f64();
        let (def_init, def_window, def_max) = self.default_plan(n);
        let (initial, window, max) = policy.plan(def_init, def_window, def_max);
        if max == 0 {
            return Err(Error::InvalidArgument("need at least one term".into()));
        }
        let prec = policy
            .precision_bits
            .unwrap_or_else(|| choose_precision(&params, max));

        let mut diagnostics = Diagnostics::default();
        if !params.is_squarefree_pair() {
            diagnostics.warnings.push(format!(
                "experimental: ({}, {}) is not a square-free pair; the series is not proven to converge here",
                self.r, self.s
            ));
        }
        if self.r * self.s > VALIDATED_RS && !policy.is_fixed() && !policy.oracle_check {
            diagnostics.warnings.push(format!(
                "r*s = {} is beyond the validated range (r*s <= {VALIDATED_RS}); the stopping rule can settle on a wrong integer here, rerun with --oracle-check",
                self.r * self.s
            ));
        }
        let mut trace = policy.keep_trace.then(Vec::new);
        let mut total = Float::new(prec);
        let mut tracker = StabilityTracker::default();
        let mut n_used = 0;
        let mut settled = policy.is_fixed();
        for k in 1..=max {
            let t = self.term_value(n, k, &gap, gap_f64, prec, policy.adaptive)?;
            if t.fast {
                diagnostics.fast_terms += 1;
            } else {
                diagnostics.full_terms += 1;
            }
            diagnostics.max_imag_ratio = diagnostics.max_imag_ratio.max(t.max_imag_ratio);
            diagnostics
                .realness_violations
                .extend(t.violations.iter().map(|&m| (k, m)));
            total += &t.value;
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
        if !diagnostics.realness_violations.is_empty() {
            diagnostics.warnings.push(format!(
                "{} inner sums had a non-negligible imaginary part",
                diagnostics.realness_violations.len()
            ));
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
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p1415() -> HrrParams {
        HrrParams::new(14, 15, 500).unwrap()
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_k(14, 15, 1), Rational::from((91, 12)));
        assert_eq!(delta_k(14, 15, 1), big_r(14, 15));
        assert_eq!(delta_k(14, 15, 5), Rational::from((-13, 12)));
        assert_eq!(delta_k(14, 15, 210), Rational::from((91, 12)));
        for k in [5, 7, 10] {
            assert!(delta_k(14, 15, k) < 0);
        }
    }

    #[test]
    fn delta_periodic_in_rs() {
        for (r, s) in [(2, 3), (5, 6), (14, 15), (6, 25)] {
            for k in 1..=3 * r * s {
                assert_eq!(
                    delta_k(r, s, k),
                    delta_k(r, s, k + r * s),
                    "({r},{s}) k={k}"
                );
            }
        }
    }

    #[test]
    fn first_inner_sum_is_one() {
        let a = a_km(&p1415(), 1, 0, 128).unwrap();
        assert_eq!(a.re, 1);
        assert_eq!(a.im, 0);
    }

    #[test]
    fn a_km_range_checked() {
        assert!(a_km(&p1415(), 1, 8, 64).is_err());
        assert!(a_km(&p1415(), 5, 0, 64).is_err());
    }

    #[test]
    fn inner_sums_are_real() {
        let series = HrrSeries::new(14, 15).unwrap();
        let tol = Float::with_val(64, Float::i_exp(1, -60));
        for k in 1..=60 {
            let Some(m_max) = series.kdata(k).unwrap().m_max else {
                continue;
            };
            for m in 0..=m_max {
                let a = series.a_km(500, k, m, 128).unwrap();
                let bound = Float::with_val(64, a.re.abs_ref()) + 1u32;
                assert!(
                    Float::with_val(64, a.im.abs_ref()) <= bound * &tol,
                    "k={k} m={m}"
                );
            }
        }
    }

    #[test]
    fn empty_terms_are_exact_zero() {
        for k in [5, 7, 10] {
            let t = term_k(&p1415(), k, 200).unwrap();
            assert!(t.is_zero());
        }
    }

    #[test]
    fn term_eight_cancels() {
        let t8 = term_k(&p1415(), 8, 256).unwrap();
        let t1 = term_k(&p1415(), 1, 256).unwrap();
        assert!(
            Float::with_val(256, t8.abs_ref())
                < Float::with_val(256, t1.abs_ref()) * Float::with_val(64, 1e-30)
        );
    }

    #[test]
    fn dominant_term() {
        let t1 = term_k(&p1415(), 1, 256).unwrap();
        assert_eq!(
            crate::bigfloat::format_fixed(&t1, 4),
            "310093947025049932429.8505"
        );
    }

    #[test]
    fn niven_case_matches_oracle() {
        let p = HrrParams::new(2, 3, 30).unwrap();
        let rep = evaluate(&p, &TruncationPolicy::default().with_oracle()).unwrap();
        assert_eq!(rep.value, oracle_prs(2, 3, 30));
        assert!(rep.oracle_checked);
        assert!(rep.residual < 0.5);
    }

    #[test]
    fn precision_choice() {
        let p = p1415();
        let bits = choose_precision(&p, 0);
        assert!(bits >= 77 + 96, "{bits}");
        assert!(choose_precision(&p, 100) > bits);
        assert!(choose_precision(&HrrParams::new(14, 15, 600).unwrap(), 0) > bits);
        let small = HrrParams::new(14, 15, 8).unwrap();
        assert!(choose_precision(&small, 0) >= 96);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            HrrParams::new(4, 6, 10),
            Err(Error::NotCoprime { .. })
        ));
        assert!(matches!(
            HrrParams::new(6, 25, 10),
            Err(Error::NotSquareFree { value: 25 })
        ));
        assert!(HrrParams::non_squarefree(6, 25, 10).is_ok());
        let low = HrrParams::new(14, 15, 7).unwrap();
        assert!(matches!(
            evaluate(&low, &TruncationPolicy::default()),
            Err(Error::NotAboveR { .. })
        ));
    }

    #[test]
    fn fixed_policy_sums_exactly() {
        let series = HrrSeries::new(14, 15).unwrap();
        let sums = series.partial_sums(500, 11, None).unwrap();
        assert_eq!(sums.len(), 11);
        // S_7 = S_8 up to the cancelling eighth term
        let d = Float::with_val(256, &sums[7].1 - &sums[6].1).abs();
        assert!(d < 1e-6);
    }

    #[test]
    fn deterministic_and_precision_stable() {
        let series = HrrSeries::new(5, 7).unwrap();
        let policy = TruncationPolicy::default().with_precision(160);
        let a = series.evaluate(120, &policy).unwrap();
        let b = series.evaluate(120, &policy).unwrap();
        assert_eq!(a, b);
        let c = series
            .evaluate(120, &TruncationPolicy::default().with_precision(224))
            .unwrap();
        let diff = Float::with_val(256, &a.sum - &c.sum).abs();
        let scale = Float::with_val(256, a.sum.abs_ref()) * Float::with_val(64, 2f64.powi(-32));
        assert!(diff <= scale);
    }

    #[test]
    fn adaptive_matches_uniform() {
        let series = HrrSeries::new(3, 10).unwrap();
        let adaptive = series.evaluate(140, &TruncationPolicy::fixed(60)).unwrap();
        let uniform = series
            .evaluate(140, &TruncationPolicy::fixed(60).uniform_precision())
            .unwrap();
        assert!(adaptive.diagnostics.fast_terms > 0);
        assert_eq!(uniform.diagnostics.fast_terms, 0);
        let diff = Float::with_val(256, &adaptive.sum - &uniform.sum).abs();
        assert!(diff < 1e-9, "{diff}");
    }
}
