//! Lorentz-symbol and weighted multiplier bounds on a commutative and a
//! non-commutative instance. The left side is a certified lower bound on the
//! operator norm.

use nclab::fourier::parse_instance;
use nclab::inequality::{run_suite, summarize, InequalityKind, SuiteSpec};

fn main() -> nclab::Result<()> {
    for name in ["cyclic:32", "group:D4"] {
        let f = parse_instance(name)?;
        let mut cells = Vec::new();
        for p in [1.25, 1.5, 3.0, 4.0] {
            for q in [1.0, f64::INFINITY] {
                cells.push(SuiteSpec::new(InequalityKind::MultiplierLorentz, p).q(q));
            }
        }
        for p in [3.0, 4.0] {
            cells.push(SuiteSpec::new(InequalityKind::MultiplierWeighted, p).q(p));
        }
        for spec in cells {
            let reports = run_suite(&f, &spec.trials(40).seed(1))?;
            let cell = &summarize(&reports)[0];
            let brackets = reports.iter().filter(|r| r.lhs_upper.is_some_and(|u| u > r.lhs)).count();
            println!(
                "{name:<10} {:<8} p = {:<5} q = {:<4} median {:.4}  max {:.4}  open brackets {brackets}/40",
                cell.kind.tag(),
                cell.p,
                cell.q.unwrap(),
                cell.median_ratio,
                cell.max_ratio
            );
        }
    }
    Ok(())
}
