//! Hardy–Littlewood weighted bound and its dual on `ℤ_64`, with the default
//! reference operator `(1 + |k|²)^{1/2}`, over a few weight exponents.

use nclab::fourier::parse_instance;
use nclab::inequality::{run_suite, summarize, InequalityKind, SuiteSpec};

fn main() -> nclab::Result<()> {
    let f = parse_instance("cyclic:64")?;
    for kind in [InequalityKind::HardyLittlewood, InequalityKind::DualHardyLittlewood] {
        for p in [1.25, 1.5, 1.75] {
            for beta in [0.5, 1.0, 2.0] {
                let spec = SuiteSpec::new(kind, p).beta(beta).trials(100).seed(3);
                let cell = &summarize(&run_suite(&f, &spec)?)[0];
                println!(
                    "{:<9} p = {p:<5} β = {beta:<4} median {:.4}  max {:.4}",
                    kind.tag(),
                    cell.median_ratio,
                    cell.max_ratio
                );
            }
        }
    }
    Ok(())
}
