//! Inversion, Plancherel, contraction and module identities on each
//! bundled instance.

use nclab::fourier::{parse_instance, random_axiom_check};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> nclab::Result<()> {
    let instances = ["cyclic:16", "group:S3", "group:S4", "group:D4", "group:Q8", "group:Z2xZ2", "dual:group:S3"];
    println!("{:<16} {:>12} {:>12} {:>6}", "instance", "worst err", "worst slack", "pass");
    for name in instances {
        let f = parse_instance(name)?;
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let (mut err, mut slack, mut pass) = (0.0f64, f64::INFINITY, true);
        for _ in 0..20 {
            let rep = random_axiom_check(&f, &mut rng)?;
            err = err.max(rep.worst_identity_error());
            slack = slack.min(rep.worst_slack());
            pass &= rep.passes();
        }
        println!("{name:<16} {err:>12.2e} {slack:>12.2e} {pass:>6}");
    }
    Ok(())
}
