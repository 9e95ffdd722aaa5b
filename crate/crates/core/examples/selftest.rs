//! Run the invariant batteries behind `prs selftest`.

use regular_partitions::cli::selftest::run_all;

fn main() {
    for check in run_all(1, None) {
        match check.outcome {
            Ok(msg) => println!("ok    {:<22} {msg}", check.name),
            Err(msg) => println!("FAIL  {:<22} {msg}", check.name),
        }
    }
}
