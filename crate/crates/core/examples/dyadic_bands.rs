//! Dyadic band decomposition of random multipliers on `ℤ_64`: the largest
//! band norm against the full Lorentz norm.

use nclab::fourier::parse_instance;
use nclab::inequality::dyadic_sweep;

fn main() -> nclab::Result<()> {
    let f = parse_instance("cyclic:64")?;
    for s in [0.5, 1.0, 2.0] {
        let reports = dyadic_sweep(&f, s, 10, 0)?;
        let ratios: Vec<String> = reports.iter().map(|r| format!("{:.3}", r.report.ratio)).collect();
        let converged = reports.iter().filter(|r| r.window_converged).count();
        println!("s = {s}: sup/full [{}], windows converged {converged}/10", ratios.join(" "));
    }
    Ok(())
}
