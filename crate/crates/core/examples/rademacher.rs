//! The classical series for the ordinary partition function p(n).

use regular_partitions::hrr::TruncationPolicy;
use regular_partitions::qseries::partition_numbers;
use regular_partitions::rademacher;

fn main() -> regular_partitions::Result<()> {
    let six = rademacher::evaluate_p(500, 6, rademacher::choose_precision(500, 6))?;
    println!(
        "p(500) from 6 terms: {} (residual {:.4})",
        six.value,
        six.residual.to_f64()
    );

    let table = partition_numbers(1000);
    for n in [1u64, 10, 100, 1000] {
        let rep = rademacher::evaluate_with(n, &TruncationPolicy::default())?;
        let ok = rep.value == table[n as usize];
        println!(
            "p({n}) = {} after {} terms{}",
            rep.value,
            rep.n_used,
            if ok { "" } else { "  MISMATCH" }
        );
    }
    Ok(())
}
