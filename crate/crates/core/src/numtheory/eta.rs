use rand::Rng;
use rug::{Float, Rational};

use super::{dedekind_sum, gcd, mod_inverse, Phase};
use crate::bigfloat::{pi, BigComplex};
use crate::error::{Error, Result};
use crate::qseries::pentagonal_terms;

/// Dedekind eta `exp(pi i tau / 12) * (q; q)_inf` with `q = exp(2 pi i tau)`,
/// where the product is summed as the pentagonal series over `|l| <= terms`.
pub fn eta_pentagonal(tau: &BigComplex, terms: u64, prec: u32) -> Result<BigComplex> {
    if tau.im.is_sign_negative() || tau.im.is_zero() {
        return Err(Error::NotUpperHalfPlane);
    }
    let wp = prec + 32;
    let tau = tau.with_prec(wp);
    let two_pi_i_tau = tau.mul_i().scale(&Float::with_val(wp, pi(wp) * 2u32));

    // exponents past this bound contribute below 2^-wp
    let decay = Float::with_val(wp, &two_pi_i_tau.re).abs();
    let cutoff = Float::with_val(wp, wp as f64 * std::f64::consts::LN_2 + 64.0) / &decay;
    let cutoff = cutoff.to_f64().min(u64::MAX as f64 / 4.0) as u64;
    let max_exponent = terms * (3 * terms + 1) / 2;

    let mut sum = BigComplex::zero(wp);
    for (e, sign) in pentagonal_terms(max_exponent.min(cutoff)) {
        let term = two_pi_i_tau.scale(&Float::with_val(wp, e)).exp();
        if sign > 0 {
            sum = sum.add(&term);
        } else {
            sum = sum.sub(&term);
        }
    }
    let prefactor = tau
        .mul_i()
        .scale(&Float::with_val(wp, pi(wp) / 12u32))
        .exp();
    Ok(prefactor.mul(&sum).with_prec(prec))
}

/// `|eta((a tau + b)/(c tau + d)) - eps * {-i (c tau + d)}^(1/2) * eta(tau)|`
/// with `eps = exp(pi i ((a + d)/(12 c) + s(-d, c)))` and the principal root.
///
/// Both sides are evaluated independently from pentagonal sums of `terms`
/// terms; a small residual confirms the phase conventions.
pub fn eta_transform_check(
    a: i64,
    b: i64,
    c: i64,
    d: i64,
    tau: &BigComplex,
    terms: u64,
    prec: u32,
) -> Result<Float> {
    if c <= 0 || (a as i128) * (d as i128) - (b as i128) * (c as i128) != 1 {
        return Err(Error::NotUnimodular { a, b, c, d });
    }
    if tau.im.is_sign_negative() || tau.im.is_zero() {
        return Err(Error::NotUpperHalfPlane);
    }
    let wp = prec + 32;
    let tau = tau.with_prec(wp);
    let num = tau
        .scale(&Float::with_val(wp, a))
        .add_real(&Float::with_val(wp, b));
    let den = tau
        .scale(&Float::with_val(wp, c))
        .add_real(&Float::with_val(wp, d));
    let image = num.div(&den);

    let lhs = eta_pentagonal(&image, terms, wp)?;

    let theta = Rational::from((a + d, 12 * c)) + dedekind_sum(-(d as i128), c as u64)?;
    let eps = Phase::new(theta).to_complex(wp);
    let root = den.mul_i().neg().sqrt();
    let rhs = eps.mul(&root).mul(&eta_pentagonal(&tau, terms, wp)?);

    Ok(Float::with_val(prec, lhs.sub(&rhs).abs()))
}

/// A random matrix `(a b; c d)` of determinant 1 with `1 <= c <= max_c` and
/// `|d| <= 10`.
pub fn random_unimodular<R: Rng + ?Sized>(rng: &mut R, max_c: i64) -> (i64, i64, i64, i64) {
    let c = rng.gen_range(1..=max_c.max(1));
    let d = loop {
        let d: i64 = rng.gen_range(-10..=10);
        if gcd(d.unsigned_abs(), c as u64) == 1 {
            break d;
        }
    };
    let a0 = mod_inverse(d as i128, c as i128).expect("d coprime to c") as i64;
    let shift: i64 = rng.gen_range(-3..=3);
    let a = a0 + shift * c;
    let b = (a * d - 1) / c;
    (a, b, c, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inversion_fixes_i() {
        let tau = BigComplex::from_f64(0.0, 1.0, 128);
        let res = eta_transform_check(0, -1, 1, 0, &tau, 50, 128).unwrap();
        assert!(res < Float::with_val(128, 2f64.powi(-64)), "{res}");
    }

    #[test]
    fn eta_at_i() {
        // eta(i) = Gamma(1/4) / (2 pi^(3/4))
        let v = eta_pentagonal(&BigComplex::from_f64(0.0, 1.0, 128), 40, 128).unwrap();
        assert!((v.re.to_f64() - 0.768_225_422_326_056_7).abs() < 1e-15);
        assert!(v.im.to_f64().abs() < 1e-30);
    }

    #[test]
    fn random_matrices_small_residual() {
        let tau = BigComplex::from_f64(0.1, 0.8, 256);
        for (a, b, c, d) in [
            (1, 0, 1, 1),
            (2, 1, 5, 3),
            (1, -1, 5, -4),
            (3, -1, 4, -1),
            (0, -1, 1, 7),
        ] {
            let res = eta_transform_check(a, b, c, d, &tau, 200, 256).unwrap();
            assert!(
                res < Float::with_val(256, 1e-50),
                "({a} {b}; {c} {d}) -> {res}"
            );
        }
    }

    #[test]
    fn random_matrices_are_unimodular() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let (a, b, c, d) = random_unimodular(&mut rng, 5);
            assert_eq!(a * d - b * c, 1);
            assert!((1..=5).contains(&c));
        }
    }

    #[test]
    fn rejects_bad_input() {
        let tau = BigComplex::from_f64(0.1, 0.8, 64);
        assert!(matches!(
            eta_transform_check(1, 1, 0, 1, &tau, 10, 64),
            Err(Error::NotUnimodular { .. })
        ));
        assert!(matches!(
            eta_transform_check(1, 1, 1, 1, &tau, 10, 64),
            Err(Error::NotUnimodular { .. })
        ));
        let low = BigComplex::from_f64(0.1, -0.8, 64);
        assert!(matches!(
            eta_transform_check(0, -1, 1, 0, &low, 10, 64),
            Err(Error::NotUpperHalfPlane)
        ));
    }
}
