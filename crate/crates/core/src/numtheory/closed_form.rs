use rug::{Integer, Rational};

use super::{
    check_hk, check_rs, gcd, is_squarefree, jacobi, mod_inverse, neg_inverse_multiple_of, Phase,
};
use crate::error::{Error, Result};

/// `Omega_{h,k}` evaluated from its closed form: two Jacobi symbols times
/// explicit roots of unity, with no Dedekind sums involved.
///
/// Writes `24 r s = A B` with `A` the largest divisor coprime to `k`, takes
/// `A'` the inverse of `A` mod `B k` and a negative inverse `H` of `h`
/// mod `B k` divisible by `A`. The odd-`k` and even-`k` cases use different
/// symbols and linear terms; both share the factor `Phi`.
pub fn omega_ratio_closed(h: i64, k: u64, r: u64, s: u64) -> Result<Phase> {
    check_rs(r, s)?;
    for v in [r, s] {
        if !is_squarefree(v) {
            return Err(Error::NotSquareFree { value: v });
        }
    }
    if h < 1 {
        return Err(Error::InvalidArgument(format!(
            "closed form needs h >= 1, got {h}"
        )));
    }
    check_hk(h as i128, k)?;

    let rk = gcd(r, k) as i128;
    let sk = gcd(s, k) as i128;
    let (h, k, r, s) = (h as i128, k as i128, r as i128, s as i128);

    let big_r = Rational::from(((r - 1) * (s - 1), 24));
    let delta = Rational::from(((r / rk - rk) * (s / sk - sk), 24));

    let full = 24 * r * s;
    let mut a = full;
    loop {
        let g = super::gcd_i128(a, k);
        if g == 1 {
            break;
        }
        a /= g;
    }
    let b = full / a;
    let bk = b * k;
    let a_bar = mod_inverse(a, bk)?;
    let h_bk = neg_inverse_multiple_of(h, bk, a)?;

    // Phi: 48 A' (k^2 R - rk sk delta_k) H / (B k)
    let core = Rational::from(&big_r * Integer::from(k * k))
        - Rational::from(&delta * Integer::from(rk * sk));
    let phi = core * Integer::from(48 * a_bar) * Integer::from(h_bk) / Integer::from(bk);

    let (sign, linear) = if k % 2 == 1 {
        let nu = (rk - 1) * (sk - 1);
        let sign = jacobi(r / rk, sk)? * jacobi(s / sk, rk)?;
        let fixed = Rational::from((-k * nu, 4 * rk * sk));
        let lin = Rational::from(&delta * Integer::from(k * k))
            - Rational::from(&big_r * Integer::from(rk * sk));
        let lin = lin * Integer::from(-2 * h) / Integer::from(k * rk * sk);
        (sign, fixed + lin)
    } else {
        let sigma = (r - rk) * (s - sk);
        let sign = jacobi(sk, r / rk)? * jacobi(rk, s / sk)?;
        let lin = Rational::from(&delta * Integer::from(2 * k * k))
            + Rational::from((k * sigma, 8))
            + Rational::from(&big_r * Integer::from(rk * sk));
        (
            sign,
            lin * Integer::from(2 * h) / Integer::from(k * rk * sk),
        )
    };
    if sign == 0 {
        return Err(Error::InvalidArgument(
            "Jacobi symbol vanished in closed form".into(),
        ));
    }
    Ok(Phase::from_sign(sign) * Phase::new(linear + phi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::omega_ratio;

    fn check_pair(r: u64, s: u64, k_max: u64) {
        for k in 1..=k_max {
            for h in 1..=k.max(1) {
                if gcd(h, k) != 1 {
                    continue;
                }
                assert_eq!(
                    omega_ratio_closed(h as i64, k, r, s).unwrap(),
                    omega_ratio(h as i64, k, r, s).unwrap(),
                    "(r,s)=({r},{s}) h={h} k={k}"
                );
            }
        }
    }

    #[test]
    fn niven_case() {
        check_pair(2, 3, 36);
    }

    #[test]
    fn odd_k_trivial_gcds_drop_nu() {
        // r_k = s_k = 1: nu_k = 0, so the fixed factor is 1
        check_pair(14, 15, 60);
    }

    #[test]
    fn other_pairs() {
        check_pair(5, 6, 40);
        check_pair(3, 10, 30);
    }

    #[test]
    fn preconditions() {
        assert!(omega_ratio_closed(0, 1, 2, 3).is_err());
        assert!(omega_ratio_closed(1, 5, 25, 6).is_err());
    }
}
