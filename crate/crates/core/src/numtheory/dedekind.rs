use rug::{Integer, Rational};

use super::{check_hk, gcd_i128};
use crate::error::Result;

/// Dedekind sum `s(e, f)` for `f >= 1`, `gcd(e, f) = 1`.
///
/// Uses the reciprocity law `s(e,f) + s(f,e) = -1/4 + (e/f + f/e + 1/(ef))/12`
/// to descend along the Euclidean algorithm, so the cost is `O(log f)`.
pub fn dedekind_sum(e: i128, f: u64) -> Result<Rational> {
    check_hk(e, f)?;
    let e = e.rem_euclid(f as i128);
    Ok(match reciprocity_small(e, f as i128) {
        Some((num, den)) => Rational::from((Integer::from(num), Integer::from(den))),
        None => reciprocity_big(e, f as i128),
    })
}

/// Each step contributes `(e^2 + f^2 + 1 - 3ef) / (12 e f)` with alternating
/// sign. Returns `None` if an intermediate overflows.
fn reciprocity_small(mut e: i128, mut f: i128) -> Option<(i128, i128)> {
    let (mut num, mut den) = (0i128, 1i128);
    let mut positive = true;
    while f > 1 {
        let step_num = e
            .checked_mul(e)?
            .checked_add(f.checked_mul(f)?)?
            .checked_add(1)?
            .checked_sub(e.checked_mul(f)?.checked_mul(3)?)?;
        let step_den = e.checked_mul(f)?.checked_mul(12)?;
        let g = gcd_i128(step_num, step_den);
        let (sn, sd) = (step_num / g, step_den / g);
        let sn = if positive { sn } else { -sn };
        let g = gcd_i128(den, sd);
        let new_den = (den / g).checked_mul(sd)?;
        num = num
            .checked_mul(sd / g)?
            .checked_add(sn.checked_mul(den / g)?)?;
        den = new_den;
        let g = gcd_i128(num, den).max(1);
        num /= g;
        den /= g;
        positive = !positive;
        (e, f) = (f % e, e);
    }
    Some((num, den))
}

fn reciprocity_big(mut e: i128, mut f: i128) -> Rational {
    let mut acc = Rational::new();
    let mut positive = true;
    while f > 1 {
        let (ei, fi) = (Integer::from(e), Integer::from(f));
        let num = Integer::from(&ei * &ei) + Integer::from(&fi * &fi) + 1u32
            - Integer::from(&ei * &fi) * 3u32;
        let den = Integer::from(&ei * &fi) * 12u32;
        let step = Rational::from((num, den));
        if positive {
            acc += step;
        } else {
            acc -= step;
        }
        positive = !positive;
        (e, f) = (f % e, e);
    }
    acc
}

/// `s(e, f)` straight from its defining sum; `O(f)`, meant as a test oracle.
pub fn dedekind_sum_by_definition(e: i128, f: u64) -> Result<Rational> {
    check_hk(e, f)?;
    let f = f as i128;
    // sum_r r/f * ((e r mod f)/f - 1/2) = sum_r r (2 (e r mod f) - f) / (2 f^2)
    let mut total = Integer::new();
    for r in 1..f {
        let frac = (e * r).rem_euclid(f);
        total += Integer::from(r) * Integer::from(2 * frac - f);
    }
    Ok(Rational::from((total, Integer::from(2 * f * f))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::gcd;

    #[test]
    fn trivial_modulus() {
        assert_eq!(dedekind_sum(0, 1).unwrap(), 0);
        assert_eq!(dedekind_sum(17, 1).unwrap(), 0);
    }

    #[test]
    fn one_third() {
        assert_eq!(
            dedekind_sum_by_definition(1, 3).unwrap(),
            Rational::from((1, 18))
        );
        assert_eq!(dedekind_sum(1, 3).unwrap(), Rational::from((1, 18)));
    }

    #[test]
    fn five_sevenths_reciprocity() {
        let s57 = dedekind_sum_by_definition(5, 7).unwrap();
        let s75 = dedekind_sum_by_definition(7, 5).unwrap();
        let rhs = Rational::from((-1, 4))
            + (Rational::from((5, 7)) + Rational::from((7, 5)) + Rational::from((1, 35))) / 12u32;
        assert_eq!(s57.clone() + s75, rhs);
        assert_eq!(dedekind_sum(5, 7).unwrap(), s57);
    }

    #[test]
    fn recursion_matches_definition() {
        for f in 1..=200u64 {
            for e in -3..(f as i128 + 3) {
                if gcd(e.unsigned_abs() as u64, f) != 1 {
                    continue;
                }
                assert_eq!(
                    dedekind_sum(e, f).unwrap(),
                    dedekind_sum_by_definition(e, f).unwrap(),
                    "s({e},{f})"
                );
            }
        }
    }

    #[test]
    fn big_fallback_agrees() {
        for (e, f) in [
            (5i128, 7i128),
            (123, 1000),
            (999_999_999, 1_000_000_000_000),
        ] {
            let small = reciprocity_small(e, f).map(|(n, d)| Rational::from((n, d)));
            let big = reciprocity_big(e, f);
            if let Some(small) = small {
                assert_eq!(small, big);
            }
        }
        // near i128 limits only the big path can answer
        let f = (1i128 << 62) + 1;
        let e = (1i128 << 61) - 1;
        let s = dedekind_sum(e, f as u64).unwrap();
        assert_eq!(s, reciprocity_big(e, f));
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(dedekind_sum(2, 4).is_err());
        assert!(dedekind_sum(1, 0).is_err());
    }

    #[test]
    fn odd_in_e() {
        for f in 2..60u64 {
            for e in 1..f as i128 {
                if gcd(e as u64, f) == 1 {
                    assert_eq!(dedekind_sum(-e, f).unwrap(), -dedekind_sum(e, f).unwrap());
                }
            }
        }
    }
}
