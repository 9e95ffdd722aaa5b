//! Check the eta transformation law for a few random SL2(Z) matrices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use regular_partitions::bigfloat::BigComplex;
use regular_partitions::numtheory::{eta_transform_check, random_unimodular};

fn main() -> regular_partitions::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..6 {
        let (a, b, c, d) = random_unimodular(&mut rng, 6);
        let tau = BigComplex::from_f64(rng.gen_range(-0.5..0.5), rng.gen_range(0.6..1.2), 256);
        let res = eta_transform_check(a, b, c, d, &tau, 200, 256)?;
        println!(
            "({a:>3} {b:>3}; {c:>2} {d:>3})  residual {:.2e}",
            res.to_f64()
        );
    }
    Ok(())
}
