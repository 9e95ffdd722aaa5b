//! Modified Bessel functions of the first kind at orders 1 and 3/2.

use rug::Float;

use crate::bigfloat::pi;
use crate::error::{Error, Result};

const GUARD: u32 = 24;

/// `I_1(x) = sum_m (x/2)^(2m+1) / (m! (m+1)!)` for `x >= 0`.
pub fn bessel_i1(x: &Float, prec: u32) -> Result<Float> {
    if x.is_sign_negative() && !x.is_zero() {
        return Err(Error::InvalidArgument(format!(
            "I_1 needs x >= 0, got {}",
            x.to_f64()
        )));
    }
    let wp = prec + GUARD;
    let half = Float::with_val(wp, x / 2u32);
    let quarter_sq = Float::with_val(wp, half.square_ref());
    let mut term = half;
    let mut sum = Float::with_val(wp, &term);
    if term.is_zero() {
        return Ok(Float::with_val(prec, 0));
    }
    let mut m: u32 = 0;
    loop {
        term *= &quarter_sq;
        term /= (m + 1) * (m + 2);
        sum += &term;
        m += 1;
        // positive terms: stop once the next one is below the working ulp
        if term.get_exp().unwrap_or(i32::MIN) < sum.get_exp().unwrap_or(0) - wp as i32 - 2
            && Float::with_val(wp, &quarter_sq / ((m + 1) * (m + 2))) < 0.5
        {
            break;
        }
    }
    Ok(Float::with_val(prec, sum))
}

/// Double-precision `I_1` by the same series.
pub(crate) fn bessel_i1_f64(x: f64) -> f64 {
    let half = 0.5 * x;
    let q = half * half;
    let mut term = half;
    let mut sum = term;
    let mut m = 0.0;
    loop {
        term *= q / ((m + 1.0) * (m + 2.0));
        sum += term;
        m += 1.0;
        if term <= sum * 1e-18 && q / ((m + 1.0) * (m + 2.0)) < 0.5 {
            return sum;
        }
    }
}

/// `I_1(x) = (1/2pi) int_0^{2pi} exp(x cos t) cos t dt` by the trapezoid rule.
///
/// The integrand is periodic and entire, so with `M` nodes the error is
/// about `2 I_{M-1}(x)`; `M = ceil(e x) + prec + 32` pushes it below `2^-prec`.
/// Independent of the power series, hence useful as its oracle.
pub fn bessel_i1_trapezoid(x: &Float, prec: u32) -> Result<Float> {
    if x.is_sign_negative() && !x.is_zero() {
        return Err(Error::InvalidArgument(format!(
            "I_1 needs x >= 0, got {}",
            x.to_f64()
        )));
    }
    let wp = prec + GUARD + 16;
    let x = Float::with_val(wp, x);
    let nodes = (std::f64::consts::E * x.to_f64()).ceil() as u32 + prec + 32;
    let step = Float::with_val(wp, pi(wp) * 2u32) / nodes;
    let mut sum = Float::new(wp);
    for j in 0..nodes {
        let cos = Float::with_val(wp, &step * j).cos();
        sum += Float::with_val(wp, &x * &cos).exp() * cos;
    }
    Ok(Float::with_val(prec, sum / nodes))
}

/// `I_{3/2}(x) = sqrt(2 / (pi x)) (cosh x - sinh x / x)` for `x > 0`.
pub fn bessel_i32(x: &Float, prec: u32) -> Result<Float> {
    if x.is_sign_negative() || x.is_zero() {
        return Err(Error::InvalidArgument(
            "closed form of I_{3/2} needs x > 0".into(),
        ));
    }
    // cosh x - sinh x / x ~ x^2 / 3 near 0 cancels about -2 log2(x) bits
    let loss = x
        .get_exp()
        .map_or(0, |e| if e < 0 { (-2 * e) as u32 } else { 0 });
    let wp = prec + GUARD + loss;
    let x = Float::with_val(wp, x);
    let (sinh, cosh) = x.clone().sinh_cosh(Float::new(wp));
    let bracket = cosh - sinh / &x;
    let scale = (Float::with_val(wp, 2u32) / (pi(wp) * &x)).sqrt();
    Ok(Float::with_val(prec, bracket * scale))
}

/// `I_{3/2}` from its power series `sum (x/2)^(3/2 + 2m) / (m! Gamma(m + 5/2))`.
pub fn bessel_i32_series(x: &Float, prec: u32) -> Result<Float> {
    if x.is_sign_negative() && !x.is_zero() {
        return Err(Error::InvalidArgument("I_{3/2} series needs x >= 0".into()));
    }
    if x.is_zero() {
        return Ok(Float::with_val(prec, 0));
    }
    let wp = prec + GUARD;
    let half = Float::with_val(wp, x / 2u32);
    let quarter_sq = Float::with_val(wp, half.square_ref());
    // Gamma(5/2) = 3 sqrt(pi) / 4
    let gamma = pi(wp).sqrt() * 3u32 / 4u32;
    let mut term = Float::with_val(wp, half.sqrt_ref()) * &half / gamma;
    let mut sum = Float::with_val(wp, &term);
    let mut m: u32 = 0;
    loop {
        // ratio (x/2)^2 / ((m+1)(m+5/2))
        term *= &quarter_sq;
        term *= 2u32;
        term /= (m + 1) * (2 * m + 5);
        sum += &term;
        m += 1;
        if term.get_exp().unwrap_or(i32::MIN) < sum.get_exp().unwrap_or(0) - wp as i32 - 2
            && Float::with_val(wp, &quarter_sq / (m + 1)) < 0.5
        {
            break;
        }
    }
    Ok(Float::with_val(prec, sum))
}
