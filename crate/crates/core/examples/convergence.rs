//! Partial sums S_N of the series for p_{14,15}(500), N = 1..11.

use regular_partitions::bigfloat::format_fixed;
use regular_partitions::hrr::HrrSeries;
use regular_partitions::qseries::oracle_prs;
use rug::Float;

fn main() -> regular_partitions::Result<()> {
    let (r, s, n) = (14, 15, 500);
    let exact = oracle_prs(r, s, n);
    let series = HrrSeries::new(r, s)?;
    println!("p = {exact}");
    println!("{:>3}  {:>27}  {:>16}", "N", "S_N", "p - S_N");
    for (k, sum) in series.partial_sums(n, 11, None)? {
        let diff = Float::with_val(sum.prec(), &exact - &sum);
        println!(
            "{k:>3}  {:>27}  {:>16}",
            format_fixed(&sum, 4),
            format_fixed(&diff, 4)
        );
    }
    Ok(())
}
