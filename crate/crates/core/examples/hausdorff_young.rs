//! Hausdorff–Young, its Lorentz refinement, Paley and the interpolated
//! Hausdorff–Young–Paley inequality on the 32-cycle and on `S_4`.

use nclab::fourier::parse_instance;
use nclab::inequality::{run_suite, summarize, InequalityKind, SuiteSpec};

fn main() -> nclab::Result<()> {
    let cells = [
        (InequalityKind::HausdorffYoung, 1.0, None),
        (InequalityKind::HausdorffYoung, 4.0 / 3.0, None),
        (InequalityKind::HausdorffYoungLorentz, 1.5, None),
        (InequalityKind::Paley, 1.5, None),
        (InequalityKind::HausdorffYoungPaley, 1.5, Some(2.0)),
    ];
    println!("{:<10} {:<12} {:>6} {:>6} {:>10} {:>10}", "kind", "instance", "p", "q", "median", "max");
    for name in ["cyclic:32", "group:S4"] {
        let f = parse_instance(name)?;
        for (kind, p, q) in cells {
            let mut spec = SuiteSpec::new(kind, p).trials(200).seed(11);
            spec.q = q;
            for c in summarize(&run_suite(&f, &spec)?) {
                let q = c.q.map(|q| format!("{q}")).unwrap_or_default();
                println!(
                    "{:<10} {:<12} {:>6.3} {:>6} {:>10.4} {:>10.4}",
                    kind.tag(),
                    c.instance,
                    c.p,
                    q,
                    c.median_ratio,
                    c.max_ratio
                );
            }
        }
    }
    Ok(())
}
