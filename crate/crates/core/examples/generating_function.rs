//! Coefficients of (q^r;q^r)(q^s;q^s) / ((q;q)(q^rs;q^rs)) against counting.

use regular_partitions::qseries::{generating_coeffs, oracle_prs_table};

fn main() -> regular_partitions::Result<()> {
    let (r, s) = (2, 3);
    let coeffs = generating_coeffs(r, s, 30)?;
    let counted = oracle_prs_table(r, s, 30);
    for (n, (c, o)) in coeffs.coeffs().iter().zip(&counted).enumerate() {
        println!("{n:>2}  {c:>4}  {}", if c == o { "" } else { "mismatch" });
    }
    Ok(())
}
