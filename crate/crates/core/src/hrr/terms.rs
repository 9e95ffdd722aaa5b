//! Per-`k` data and the two ways of evaluating a term.
//!
//! For a fixed `k`, every phase in `A_{k,m}(n)` is a rational multiple of
//! `pi` with denominator dividing `D = k lcm(6, r s)`: Dedekind sums modulo
//! `k / g` have denominators dividing `6 k`, the `c_m(h,k)` twist contributes
//! `r s k`, and `n h / k` contributes `k`. Storing numerators over `D` keeps
//! the whole phase assembly in integer arithmetic.

use std::f64::consts::PI;
use std::sync::Arc;

use rug::{Float, Integer, Rational};

use crate::bessel::{bessel_i1, bessel_i1_f64};
use crate::bigfloat::{pi, BigComplex};
use crate::error::Result;
use crate::numtheory::{gcd, gcd_i128, lcm_i128, neg_inverse_multiple_of, omega_ratio_exponent};
use crate::qseries::IntSeries;

/// Phase data for one `k`, independent of `n`.
#[derive(Debug)]
pub(crate) struct KData {
    pub k: u64,
    pub delta: Rational,
    /// `floor(delta_k)`, or `None` when `delta_k < 0` and the term vanishes.
    pub m_max: Option<u64>,
    /// Common phase denominator `D`.
    pub denom: i128,
    pub hs: Vec<u64>,
    /// `Omega_{h,k}` exponent times `D`, reduced mod `2D`.
    pub omega_num: Vec<i128>,
    /// `2 rk sk H_{h,k} / (r s k)` times `D`, reduced mod `2D`.
    pub step_num: Vec<i128>,
    pub cmk: Arc<IntSeries>,
    /// `rk sk (delta_k - m) / (r s)` for `0 <= m <= m_max`.
    pub xs: Vec<Rational>,
    pub xs_f64: Vec<f64>,
}

/// `delta_k = (r/rk - rk)(s/sk - sk) / 24`.
pub(crate) fn delta_for(r: u64, s: u64, rk: u64, sk: u64) -> Rational {
    let a = r as i64 / rk as i64 - rk as i64;
    let b = s as i64 / sk as i64 - sk as i64;
    Rational::from((a * b, 24))
}

impl KData {
    pub fn build(r: u64, s: u64, k: u64, cmk: Arc<IntSeries>) -> Result<KData> {
        let rk = gcd(r, k);
        let sk = gcd(s, k);
        let delta = delta_for(r, s, rk, sk);
        let rs = (r * s) as i128;
        let ki = k as i128;
        let denom = ki * lcm_i128(6, rs);
        let period = 2 * denom;
        let mut out = KData {
            k,
            m_max: None,
            delta,
            denom,
            hs: Vec::new(),
            omega_num: Vec::new(),
            step_num: Vec::new(),
            cmk,
            xs: Vec::new(),
            xs_f64: Vec::new(),
        };
        if out.delta < 0 {
            return Ok(out);
        }
        let m_max = out
            .delta
            .clone()
            .floor()
            .numer()
            .to_u64()
            .expect("small delta");
        out.m_max = Some(m_max);
        for m in 0..=m_max {
            let gap = Rational::from(&out.delta - Integer::from(m));
            let x = gap * Integer::from(rk * sk) / Integer::from(r * s);
            out.xs_f64.push(x.to_f64());
            out.xs.push(x);
        }

        // H_{h,k} must be divisible by the part of rs/(rk sk) coprime to k
        let mut v = rs / (rk * sk) as i128;
        loop {
            let g = gcd_i128(v, ki);
            if g == 1 {
                break;
            }
            v /= g;
        }
        let step_scale = 2 * (rk * sk) as i128 * (denom / (rs * ki));

        let h_range = if k == 1 { 0..1 } else { 1..k };
        for h in h_range {
            if gcd(h, k) != 1 {
                continue;
            }
            let omega = omega_ratio_exponent(h as i128, k, r, s)?;
            let omega_num = scaled_numerator(&omega, denom).rem_euclid(period);
            let big_h = if k == 1 {
                0
            } else {
                neg_inverse_multiple_of(h as i128, ki, v)?
            };
            let step = (step_scale * big_h).rem_euclid(period);
            out.hs.push(h);
            out.omega_num.push(omega_num);
            out.step_num.push(step);
        }
        Ok(out)
    }

    /// Number of `h` in the sum, i.e. `phi(k)`.
    pub fn len(&self) -> usize {
        self.hs.len()
    }

    /// Numerator over `D`, mod `2D`, of the total phase for `(h, m, n)`.
    #[inline]
    pub fn phase_numerator(&self, idx: usize, m: u64, n_mod_k: u64) -> i128 {
        let period = 2 * self.denom;
        let h = self.hs[idx] as i128;
        let unit = self.denom / self.k as i128;
        let twist = 2 * ((n_mod_k as i128 * h) % self.k as i128) * unit;
        (self.omega_num[idx] + (m as i128 % period) * self.step_num[idx] - twist).rem_euclid(period)
    }
}

fn scaled_numerator(x: &Rational, denom: i128) -> i128 {
    let scaled = Rational::from(x * Integer::from(denom));
    assert!(
        scaled.is_integer(),
        "phase {x} has denominator not dividing {denom}"
    );
    scaled
        .numer()
        .to_i128()
        .expect("phase numerator fits in i128")
}

/// `sum_h exp(pi i theta_h)` at precision `prec` (no `c_{m,k}` factor).
pub(crate) fn unit_sum_full(kd: &KData, m: u64, n: u64, prec: u32) -> BigComplex {
    let wp = prec + 16 + (usize::BITS - kd.len().leading_zeros());
    let pi_wp = pi(wp);
    let n_mod_k = n % kd.k;
    let mut re = Float::new(wp);
    let mut im = Float::new(wp);
    for idx in 0..kd.len() {
        let j = kd.phase_numerator(idx, m, n_mod_k);
        let angle = Float::with_val(wp, &pi_wp * Integer::from(j)) / Integer::from(kd.denom);
        let (sin, cos) = angle.sin_cos(Float::new(wp));
        re += cos;
        im += sin;
    }
    BigComplex::new(Float::with_val(prec, re), Float::with_val(prec, im))
}

/// `sum_h exp(pi i theta_h)` in double precision.
pub(crate) fn unit_sum_f64(kd: &KData, m: u64, n: u64) -> (f64, f64) {
    let n_mod_k = n % kd.k;
    let d = kd.denom as f64;
    let (mut re, mut im) = (0.0, 0.0);
    for idx in 0..kd.len() {
        let mut j = kd.phase_numerator(idx, m, n_mod_k);
        if j > kd.denom {
            j -= 2 * kd.denom;
        }
        let (sin, cos) = (PI * (j as f64 / d)).sin_cos();
        re += cos;
        im += sin;
    }
    (re, im)
}

/// Outcome of one term evaluation, with realness bookkeeping.
pub(crate) struct TermValue {
    pub value: Float,
    pub max_imag_ratio: f64,
    pub violations: Vec<u64>,
    pub fast: bool,
}

/// Terms whose magnitude bound is at most this run in double precision.
/// Every factor of such a term carries relative error below `1e-14`, so
/// the absolute error stays under `2^-40`.
pub(crate) const FAST_BOUND: f64 = 64.0;

/// Upper bound on `sum_m |c_m| phi(k) * prefactor * I_1(argument)`.
pub(crate) fn magnitude_bound(kd: &KData, n_minus_r: f64) -> f64 {
    let Some(m_max) = kd.m_max else { return 0.0 };
    let phi = kd.len() as f64;
    let k = kd.k as f64;
    let mut bound = 0.0;
    for m in 0..=m_max {
        let x = kd.xs_f64[m as usize];
        if x <= 0.0 {
            continue;
        }
        let c = kd.cmk[m as usize].to_f64().abs();
        let pref = 2.0 * PI / k * (x / n_minus_r).sqrt();
        let arg = 4.0 * PI / k * (x * n_minus_r).sqrt();
        bound += c * phi * pref * bessel_i1_f64(arg);
    }
    // slack for the f64 evaluation of the bound itself
    bound * (1.0 + 1e-9)
}

pub(crate) fn term_f64(kd: &KData, n: u64, n_minus_r: f64, prec: u32) -> TermValue {
    let mut out = TermValue {
        value: Float::new(prec),
        max_imag_ratio: 0.0,
        violations: Vec::new(),
        fast: true,
    };
    let Some(m_max) = kd.m_max else { return out };
    let k = kd.k as f64;
    let tol = 2f64.powf(-26.5);
    let mut total = 0.0;
    for m in 0..=m_max {
        let x = kd.xs_f64[m as usize];
        if x <= 0.0 {
            continue;
        }
        let c = kd.cmk[m as usize].to_f64();
        if c == 0.0 {
            continue;
        }
        let (re, im) = unit_sum_f64(kd, m, n);
        let (are, aim) = (c * re, c * im);
        let ratio = aim.abs() / (1.0 + are.abs());
        out.max_imag_ratio = out.max_imag_ratio.max(ratio);
        if ratio > tol {
            out.violations.push(m);
        }
        let pref = 2.0 * PI / k * (x / n_minus_r).sqrt();
        let arg = 4.0 * PI / k * (x * n_minus_r).sqrt();
        total += pref * are * bessel_i1_f64(arg);
    }
    out.value = Float::with_val(prec, total);
    out
}

/// Term `k` at working precision `prec`.
pub(crate) fn term_full(kd: &KData, n: u64, n_minus_r: &Rational, prec: u32) -> Result<TermValue> {
    let mut out = TermValue {
        value: Float::new(prec),
        max_imag_ratio: 0.0,
        violations: Vec::new(),
        fast: false,
    };
    let Some(m_max) = kd.m_max else {
        return Ok(out);
    };
    let wp = prec + 16;
    let pi_wp = pi(wp);
    let tol = Float::with_val(64, Float::i_exp(1, -(prec as i32) / 2));
    let mut total = Float::new(wp);
    for m in 0..=m_max {
        let x = &kd.xs[m as usize];
        if *x <= 0 {
            // delta_k - m = 0: both the prefactor and I_1(0) vanish
            continue;
        }
        let c = &kd.cmk[m as usize];
        if c.is_zero() {
            continue;
        }
        let a = unit_sum_full(kd, m, n, wp);
        let are = Float::with_val(wp, &a.re * c);
        let aim = Float::with_val(wp, &a.im * c);
        let ratio =
            Float::with_val(64, aim.abs_ref()) / (Float::with_val(64, are.abs_ref()) + 1u32);
        out.max_imag_ratio = out.max_imag_ratio.max(ratio.to_f64());
        if ratio > tol {
            out.violations.push(m);
        }
        let k = kd.k;
        let arg = Float::with_val(wp, Rational::from(x * n_minus_r)).sqrt() * &pi_wp * 4u32 / k;
        let pref = Float::with_val(wp, Rational::from(x / n_minus_r)).sqrt() * &pi_wp * 2u32 / k;
        let bessel = bessel_i1(&arg, wp)?;
        total += pref * are * bessel;
    }
    out.value = Float::with_val(prec, total);
    Ok(out)
}
