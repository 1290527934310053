//! Weak-type norm of `φ(|L|)` from singular values against the
//! counting-function formula, on random spectra.

use nclab::spectral_asymptotics::{random_spectrum, weak_norm_identity, Profile};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> nclab::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for phi in Profile::ALL {
        for r in [1.0, 2.0, 4.0] {
            let mut worst = 0.0f64;
            for _ in 0..100 {
                let l = random_spectrum(&mut rng, 64)?;
                worst = worst.max(weak_norm_identity(&l, |u| phi.eval(u), r)?.relative_gap());
            }
            println!("{:<15} r = {r}: worst relative gap {worst:.2e}", phi.name());
        }
    }
    Ok(())
}
