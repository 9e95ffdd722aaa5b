//! Evaluate p_{r,s}(n) with the default truncation and compare with direct counting.
//!
//! cargo run --release --example compute -- 14 15 500

use regular_partitions::hrr::{evaluate, HrrParams, TruncationPolicy};
use regular_partitions::qseries::oracle_prs;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .map(|a| a.parse())
        .collect::<Result<_, _>>()?;
    let (r, s, n) = match args[..] {
        [r, s, n] => (r, s, n),
        _ => (14, 15, 500),
    };
    let report = evaluate(&HrrParams::new(r, s, n)?, &TruncationPolicy::default())?;
    println!("p_{{{r},{s}}}({n}) = {}", report.value);
    println!(
        "terms {}, residual {:.6}, {} bits",
        report.n_used,
        report.residual.to_f64(),
        report.precision_bits
    );
    println!(
        "{} terms in double precision, {} at full precision",
        report.diagnostics.fast_terms, report.diagnostics.full_terms
    );
    for w in &report.diagnostics.warnings {
        println!("warning: {w}");
    }
    if n <= 5000 {
        let exact = oracle_prs(r, s, n);
        println!(
            "direct count {}",
            if exact == report.value {
                "agrees"
            } else {
                "DISAGREES"
            }
        );
    }
    Ok(())
}
