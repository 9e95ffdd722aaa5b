//! The phase ratio Omega_{h,k} from Dedekind sums and from its closed form.

use regular_partitions::numtheory::{gcd, omega_ratio, omega_ratio_closed};

fn main() -> regular_partitions::Result<()> {
    let (r, s) = (14, 15);
    for k in [1u64, 2, 6, 7, 30, 42] {
        let h = (1..k.max(2)).rev().find(|&h| gcd(h, k) == 1).unwrap_or(1);
        let direct = omega_ratio(h as i64, k, r, s)?;
        let closed = omega_ratio_closed(h as i64, k, r, s)?;
        println!(
            "h={h:<2} k={k:<3} theta = {:<12} closed form {}",
            direct.exponent(),
            closed.exponent()
        );
        assert_eq!(direct, closed);
    }
    Ok(())
}
