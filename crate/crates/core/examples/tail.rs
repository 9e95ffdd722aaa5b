//! Where the tail of the series moves: the biggest single-term jumps for
//! p_{14,15}(500) sit at multiples of r s = 210.

use regular_partitions::hrr::HrrSeries;
use rug::Float;

fn main() -> regular_partitions::Result<()> {
    let series = HrrSeries::new(14, 15)?;
    let sums = series.partial_sums(500, 750, None)?;
    let mut jumps: Vec<(f64, u64)> = sums
        .windows(2)
        .filter(|w| w[1].0 >= 200)
        .map(|w| {
            (
                Float::with_val(w[1].1.prec(), &w[1].1 - &w[0].1)
                    .abs()
                    .to_f64(),
                w[1].0,
            )
        })
        .collect();
    jumps.sort_by(|a, b| b.0.total_cmp(&a.0));
    for (size, k) in &jumps[..6] {
        println!("N = {k:>3}  |term| = {size:.5}");
    }
    Ok(())
}
