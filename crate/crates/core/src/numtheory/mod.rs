//! Exact number theory: gcds, negative inverses `H_{h,k}`, Jacobi symbols,
//! Dedekind sums and the roots of unity built from them.

mod closed_form;
mod dedekind;
mod eta;
mod phase;

pub use closed_form::omega_ratio_closed;
pub use dedekind::{dedekind_sum, dedekind_sum_by_definition};
pub use eta::{eta_pentagonal, eta_transform_check, random_unimodular};
pub use phase::Phase;

use rug::Rational;

use crate::error::{Error, Result};

/// Exact rationals: always in lowest terms with a positive denominator.
pub type ExactRational = Rational;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i128
}

pub(crate) fn lcm_i128(a: i128, b: i128) -> i128 {
    a / gcd_i128(a, b) * b
}

/// Positive divisors of `n >= 1`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn is_squarefree(n: u64) -> bool {
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Inverse of `a` modulo `m` (`m >= 1`), in `[0, m)`.
pub(crate) fn mod_inverse(a: i128, m: i128) -> Result<i128> {
    if m == 1 {
        return Ok(0);
    }
    let (mut old_r, mut r) = (a.rem_euclid(m), m);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return Err(Error::NotCoprime {
            a,
            b: m,
            gcd: old_r,
        });
    }
    Ok(old_s.rem_euclid(m))
}

/// `H` in `[0, k)` with `h * H == -1 (mod k)`; zero when `k = 1`.
pub fn mod_inverse_neg(h: i64, k: u64) -> Result<u64> {
    if k == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    let k = k as i128;
    let inv = mod_inverse(h as i128, k)?;
    Ok(((k - inv) % k) as u64)
}

/// A solution of `h * H == -1 (mod k)` that is also divisible by `v`.
///
/// Requires `gcd(v, k) = 1`; the result lies in `[0, v k)`.
pub(crate) fn neg_inverse_multiple_of(h: i128, k: i128, v: i128) -> Result<i128> {
    let base = mod_inverse(h, k).map(|inv| (k - inv) % k)?;
    let v_inv = mod_inverse(v, k)?;
    Ok(v * ((base * v_inv) % k))
}

/// Jacobi symbol `(a | b)` for odd `b >= 1`.
pub fn jacobi(a: i128, b: i128) -> Result<i32> {
    if b <= 0 || b % 2 == 0 {
        return Err(Error::BadJacobiModulus(b));
    }
    let mut a = a.rem_euclid(b);
    let mut b = b;
    let mut t = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(b % 8, 3 | 5) {
                t = -t;
            }
        }
        (a, b) = (b, a);
        if a % 4 == 3 && b % 4 == 3 {
            t = -t;
        }
        a %= b;
    }
    Ok(if b == 1 { t } else { 0 })
}

/// `omega(e, f) = exp(pi i s(e, f))`.
pub fn omega(e: i64, f: u64) -> Result<Phase> {
    Ok(Phase::new(dedekind_sum(e as i128, f)?))
}

/// `Omega_{h,k}`: the quotient of four `omega` values attached to `(h, k)`
/// and the divisor pair `(gcd(r,k), gcd(s,k))`.
pub fn omega_ratio(h: i64, k: u64, r: u64, s: u64) -> Result<Phase> {
    check_rs(r, s)?;
    for v in [r, s] {
        if !is_squarefree(v) {
            return Err(Error::NotSquareFree { value: v });
        }
    }
    check_hk(h as i128, k)?;
    Ok(Phase::new(omega_ratio_exponent(h as i128, k, r, s)?))
}

/// Exponent of `Omega_{h,k}` without the square-free check.
pub(crate) fn omega_ratio_exponent(h: i128, k: u64, r: u64, s: u64) -> Result<Rational> {
    let rk = gcd(r, k);
    let sk = gcd(s, k);
    let (r, s, k) = (r as i128, s as i128, k as i128);
    let (rk, sk) = (rk as i128, sk as i128);
    let mut theta = dedekind_sum(h, k as u64)?;
    theta += dedekind_sum(r * s * h / (rk * sk), (k / (rk * sk)) as u64)?;
    theta -= dedekind_sum(r * h / rk, (k / rk) as u64)?;
    theta -= dedekind_sum(s * h / sk, (k / sk) as u64)?;
    Ok(theta)
}

pub(crate) fn check_rs(r: u64, s: u64) -> Result<()> {
    if r < 2 || s < 2 {
        return Err(Error::InvalidArgument(format!(
            "need r, s >= 2, got ({r}, {s})"
        )));
    }
    let g = gcd(r, s);
    if g != 1 {
        return Err(Error::NotCoprime {
            a: r as i128,
            b: s as i128,
            gcd: g as i128,
        });
    }
    Ok(())
}

pub(crate) fn check_hk(h: i128, k: u64) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let g = gcd_i128(h, k as i128);
    if g != 1 {
        return Err(Error::NotCoprime {
            a: h,
            b: k as i128,
            gcd: g,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn legendre_brute(a: i128, p: i128) -> i32 {
        let a = a.rem_euclid(p);
        if a == 0 {
            return 0;
        }
        if (1..p).any(|x| (x * x) % p == a) {
            1
        } else {
            -1
        }
    }

    fn factor(mut n: i128) -> Vec<i128> {
        let mut out = Vec::new();
        let mut p = 2;
        while p * p <= n {
            while n % p == 0 {
                out.push(p);
                n /= p;
            }
            p += 1;
        }
        if n > 1 {
            out.push(n);
        }
        out
    }

    #[test]
    fn divisors_and_squarefree() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert!(is_squarefree(210));
        assert!(!is_squarefree(25));
        assert!(!is_squarefree(12));
        assert!(is_squarefree(1));
    }

    #[test]
    fn negative_inverse_examples() {
        assert_eq!(mod_inverse_neg(1, 5).unwrap(), 4);
        assert_eq!(mod_inverse_neg(0, 1).unwrap(), 0);
        assert_eq!(mod_inverse_neg(3, 7).unwrap(), 2);
        assert!(matches!(
            mod_inverse_neg(4, 6),
            Err(Error::NotCoprime { .. })
        ));
    }

    #[test]
    fn negative_inverse_property() {
        for k in 2..120u64 {
            for h in 0..k {
                if gcd(h, k) != 1 {
                    continue;
                }
                let hh = mod_inverse_neg(h as i64, k).unwrap();
                assert!(hh < k);
                assert_eq!(h * hh % k, k - 1);
            }
        }
    }

    #[test]
    fn inverse_multiple_of_v() {
        for (h, k, v) in [(1, 7, 15), (5, 12, 35), (3, 8, 105)] {
            let hh = neg_inverse_multiple_of(h, k, v).unwrap();
            assert_eq!((h * hh + 1).rem_euclid(k), 0);
            assert_eq!(hh % v, 0);
        }
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi(1, 9).unwrap(), 1);
        assert_eq!(jacobi(6, 9).unwrap(), 0);
        assert_eq!(jacobi(2, 15).unwrap(), 1);
        assert_eq!(jacobi(-1, 7).unwrap(), -1);
        assert!(jacobi(3, 8).is_err());
        assert!(jacobi(3, -7).is_err());
        assert!(jacobi(3, 0).is_err());
    }

    #[test]
    fn jacobi_matches_brute_force() {
        let odd_primes: Vec<i128> = (3..=101).filter(|&p| factor(p).len() == 1).collect();
        for &p in &odd_primes {
            for a in 0..p {
                assert_eq!(jacobi(a, p).unwrap(), legendre_brute(a, p), "({a}|{p})");
            }
        }
        // composite moduli: product of Legendre symbols over the factorisation
        for b in (3..=201).step_by(2) {
            for a in -20..60 {
                let want: i32 = factor(b).iter().map(|&p| legendre_brute(a, p)).product();
                assert_eq!(jacobi(a, b).unwrap(), want, "({a}|{b})");
            }
        }
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega(0, 1).unwrap(), Phase::one());
        assert_eq!(*omega(1, 3).unwrap().exponent(), Rational::from((1, 18)));
    }

    #[test]
    fn omega_ratio_trivial_and_periodic() {
        assert_eq!(omega_ratio(0, 1, 14, 15).unwrap(), Phase::one());
        for k in 1..40u64 {
            for h in 0..k as i64 {
                if gcd(h as u64, k) != 1 {
                    continue;
                }
                let a = omega_ratio(h, k, 14, 15).unwrap();
                let b = omega_ratio(h + 3 * k as i64, k, 14, 15).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn omega_ratio_from_definition() {
        // Omega_{1,2} for (14,15): r_2 = 2, s_2 = 1
        let want = omega(1, 2).unwrap() * omega(105, 1).unwrap()
            / (omega(7, 1).unwrap() * omega(15, 2).unwrap());
        assert_eq!(omega_ratio(1, 2, 14, 15).unwrap(), want);
    }

    #[test]
    fn omega_ratio_preconditions() {
        assert!(matches!(
            omega_ratio(1, 4, 4, 9),
            Err(Error::NotSquareFree { .. })
        ));
        assert!(matches!(
            omega_ratio(1, 4, 6, 10),
            Err(Error::NotCoprime { .. })
        ));
        assert!(matches!(
            omega_ratio(2, 4, 14, 15),
            Err(Error::NotCoprime { .. })
        ));
    }
}
