//! A pair outside the proven range: r = 6, s = 25.

use regular_partitions::hrr::{HrrParams, HrrSeries, TruncationPolicy};
use regular_partitions::qseries::oracle_prs;

fn main() -> regular_partitions::Result<()> {
    let params = HrrParams::non_squarefree(6, 25, 500)?;
    let series = HrrSeries::for_params(&params)?;
    for terms in [1, 3, 5, 7, 20] {
        let rep = series.evaluate(500, &TruncationPolicy::fixed(terms))?;
        println!(
            "N = {terms:>2}: {} residual {:.4}",
            rep.value,
            rep.residual.to_f64()
        );
    }
    println!("direct count {}", oracle_prs(6, 25, 500));
    Ok(())
}
