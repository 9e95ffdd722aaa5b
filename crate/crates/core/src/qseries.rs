//! Truncated power series with big-integer coefficients.
//!
//! Everything here is exact. The eta-type products `(x^t;x^t)_inf` are built
//! from the pentagonal number expansion, never by multiplying out factors, and
//! quotients rely on the constant term being a unit so that integrality is
//! preserved.

use std::collections::HashMap;
use std::ops::Index;
use std::sync::{Arc, OnceLock};

use rug::Integer;

use crate::error::{Error, Result};
use crate::numtheory::{divisors, gcd};

/// A power series `sum coeffs[j] x^j` known up to and including `x^M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntSeries {
    coeffs: Vec<Integer>,
}

impl IntSeries {
    /// Builds a series from its coefficients; the order is `coeffs.len() - 1`.
    ///
    /// Panics if `coeffs` is empty.
    pub fn new(coeffs: Vec<Integer>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least the constant term"
        );
        IntSeries { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    pub fn zero(order: usize) -> Self {
        IntSeries {
            coeffs: vec![Integer::new(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Integer::from(1);
        s
    }

    pub fn truncation_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Integer> {
        self.coeffs
    }

    /// Coefficient of `x^j`, or `None` past the truncation order.
    pub fn get(&self, j: usize) -> Option<&Integer> {
        self.coeffs.get(j)
    }

    /// The same series known to a lower order.
    pub fn truncate(&self, order: usize) -> IntSeries {
        let order = order.min(self.truncation_order());
        IntSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }
}

impl Index<usize> for IntSeries {
    type Output = Integer;

    fn index(&self, j: usize) -> &Integer {
        &self.coeffs[j]
    }
}

/// Cauchy product truncated at the smaller of the two orders.
pub fn series_mul(a: &IntSeries, b: &IntSeries) -> IntSeries {
    let order = a.truncation_order().min(b.truncation_order());
    let mut out = IntSeries::zero(order);
    for (i, ai) in a.coeffs[..=order].iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.coeffs[..=order - i].iter().enumerate() {
            if !bj.is_zero() {
                out.coeffs[i + j] += ai * bj;
            }
        }
    }
    out
}

/// Quotient `a / b` for `b` with constant term `+1` or `-1`.
pub fn series_div(a: &IntSeries, b: &IntSeries) -> Result<IntSeries> {
    let b0 = &b.coeffs[0];
    let sign = if *b0 == 1 {
        1
    } else if *b0 == -1 {
        -1
    } else {
        return Err(Error::NonUnitConstantTerm(b0.to_string()));
    };
    let order = a.truncation_order().min(b.truncation_order());
    // b's nonzero tail, so sparse divisors stay cheap
    let support: Vec<(usize, &Integer)> = b.coeffs[1..=order]
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| (j + 1, c))
        .collect();
    let mut q: Vec<Integer> = Vec::with_capacity(order + 1);
    for i in 0..=order {
        let mut acc = a.coeffs[i].clone();
        for &(j, bj) in &support {
            if j > i {
                break;
            }
            acc -= bj * &q[i - j];
        }
        if sign < 0 {
            acc = -acc;
        }
        q.push(acc);
    }
    Ok(IntSeries { coeffs: q })
}

/// Generalised pentagonal exponents `l(3l-1)/2` for `l = 0, 1, -1, 2, -2, ...`
/// with their signs `(-1)^l`, in increasing order, up to `limit`.
pub fn pentagonal_terms(limit: u64) -> impl Iterator<Item = (u64, i32)> {
    let mut l: i64 = 0;
    let mut neg = false;
    std::iter::from_fn(move || {
        let idx = if neg { -l } else { l };
        let e = (idx * (3 * idx - 1) / 2) as u64;
        if e > limit {
            return None;
        }
        let sign = if l % 2 == 0 { 1 } else { -1 };
        if neg || l == 0 {
            l += 1;
            neg = false;
        } else {
            neg = true;
        }
        Some((e, sign))
    })
}

/// `(x^t; x^t)_inf` truncated at `x^order`, via the pentagonal number theorem.
pub fn euler_product(t: u64, order: usize) -> IntSeries {
    assert!(t >= 1, "euler_product needs t >= 1");
    let mut out = IntSeries::zero(order);
    let limit = order as u64 / t;
    for (e, sign) in pentagonal_terms(limit) {
        out.coeffs[(e * t) as usize] = Integer::from(sign);
    }
    out
}

/// `(x^a;x^a)(x^b;x^b) / ((x^c;x^c)(x^d;x^d))` truncated at `x^order`.
pub fn eta_quotient(a: u64, b: u64, c: u64, d: u64, order: usize) -> IntSeries {
    let num = series_mul(&euler_product(a, order), &euler_product(b, order));
    let den = series_mul(&euler_product(c, order), &euler_product(d, order));
    series_div(&num, &den).expect("eta products have constant term 1")
}

/// `prod_{j >= 1} (1 - x^{t j})` multiplied out factor by factor. Slow; kept
/// as a cross-check of [`euler_product`].
pub fn euler_product_naive(t: u64, order: usize) -> IntSeries {
    assert!(t >= 1, "euler_product_naive needs t >= 1");
    let mut acc = IntSeries::one(order);
    let mut j = t;
    while j as usize <= order {
        let mut factor = IntSeries::one(order);
        factor.coeffs[j as usize] = Integer::from(-1);
        acc = series_mul(&acc, &factor);
        j += t;
    }
    acc
}

/// Generating function of `p_{r,s}(n)`, truncated at `x^order`.
pub fn generating_coeffs(r: u64, s: u64, order: usize) -> Result<IntSeries> {
    check_pair(r, s)?;
    Ok(eta_quotient(r, s, 1, r * s, order))
}

/// `p(0), ..., p(order)`: coefficients of `1 / (x;x)_inf`.
pub fn partition_numbers(order: usize) -> IntSeries {
    series_div(&IntSeries::one(order), &euler_product(1, order)).expect("constant term is 1")
}

/// Counts partitions of `n` into parts divisible by neither `r` nor `s`.
///
/// Plain coin-change recurrence over the allowed parts; shares nothing with
/// the series code. Works for any `r, s >= 1`, coprime or not.
pub fn oracle_prs(r: u64, s: u64, n: u64) -> Integer {
    oracle_prs_table(r, s, n)
        .pop()
        .expect("table has n + 1 entries")
}

/// `p_{r,s}(j)` for every `0 <= j <= n_max`.
pub fn oracle_prs_table(r: u64, s: u64, n_max: u64) -> Vec<Integer> {
    let n = n_max as usize;
    let mut ways = vec![Integer::new(); n + 1];
    ways[0] = Integer::from(1);
    for part in 1..=n {
        if part as u64 % r == 0 || part as u64 % s == 0 {
            continue;
        }
        for total in part..=n {
            let (lo, hi) = ways.split_at_mut(total);
            hi[0] += &lo[total - part];
        }
    }
    ways
}

/// The series `sum_m c_{m,k} x^m` attached to the divisor pair `(rk, sk)`.
///
/// It is `(x^a;x^a)(x^b;x^b) / ((x^c;x^c)(x^d;x^d))` with `a = rk*s/sk`,
/// `b = sk*r/rk`, `c = rs/(rk*sk)` and `d = rk*sk`.
pub fn cmk_coeffs(r: u64, s: u64, rk: u64, sk: u64, order: usize) -> Result<IntSeries> {
    if rk == 0 || sk == 0 || r % rk != 0 || s % sk != 0 {
        return Err(Error::NotDivisorPair { r, s, rk, sk });
    }
    let (a, b, c, d) = cmk_exponents(r, s, rk, sk);
    Ok(eta_quotient(a, b, c, d, order))
}

pub(crate) fn cmk_exponents(r: u64, s: u64, rk: u64, sk: u64) -> (u64, u64, u64, u64) {
    (rk * s / sk, sk * r / rk, r * s / (rk * sk), rk * sk)
}

/// Truncation order used for `c_{m,k}` tables: `max(32, ceil(2 R))`.
pub fn default_cmk_order(r: u64, s: u64) -> usize {
    let twice_r = ((r - 1) * (s - 1)).div_ceil(12);
    (twice_r as usize).max(32)
}

/// Write-once cache of `c_{m,k}` tables for one `(r, s)`.
///
/// Keys are the divisor pairs `(gcd(r,k), gcd(s,k))`; all of them are known
/// up front, and each table is filled on first access. Readers never block
/// one another once a table exists.
#[derive(Debug)]
pub struct CmkCache {
    r: u64,
    s: u64,
    order: usize,
    tables: HashMap<(u64, u64), OnceLock<Arc<IntSeries>>>,
}

impl CmkCache {
    pub fn new(r: u64, s: u64, order: usize) -> Self {
        let mut tables = HashMap::new();
        for rk in divisors(r) {
            for sk in divisors(s) {
                tables.insert((rk, sk), OnceLock::new());
            }
        }
        CmkCache {
            r,
            s,
            order,
            tables,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, rk: u64, sk: u64) -> Result<Arc<IntSeries>> {
        let (r, s) = (self.r, self.s);
        let slot = self
            .tables
            .get(&(rk, sk))
            .ok_or(Error::NotDivisorPair { r, s, rk, sk })?;
        Ok(slot
            .get_or_init(|| {
                let (a, b, c, d) = cmk_exponents(r, s, rk, sk);
                Arc::new(eta_quotient(a, b, c, d, self.order))
            })
            .clone())
    }

    /// Fills every table.
    pub fn warm(&self) {
        for &(rk, sk) in self.tables.keys() {
            let _ = self.get(rk, sk);
        }
    }
}

fn check_pair(r: u64, s: u64) -> Result<()> {
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
