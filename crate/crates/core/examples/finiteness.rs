//! Growth of `‖D_m^{−β}‖_{L^{r,∞}}` along ladders with `τ(E_(0,s)) ≈ s^α`,
//! plus the singular value function against its continuous profile under
//! refinement.

use nclab::spectral_asymptotics::{
    breakpoint_deviation, dyadic_dims, finiteness_boundary_cases, finiteness_grid, finiteness_scan,
    off_breakpoint_error, GrowthLadder,
};

fn main() -> nclab::Result<()> {
    let dims = dyadic_dims(16, 4096);
    println!("{:>4} {:>5} {:>3} {:>12} {:>10} {:>10}", "α", "β", "r", "increase", "observed", "expected");
    for (alpha, beta, r) in finiteness_grid().into_iter().chain(finiteness_boundary_cases()) {
        let t = finiteness_scan(&GrowthLadder::new(alpha)?, beta, r, &dims)?;
        println!(
            "{alpha:>4} {beta:>5} {r:>3} {:>12.3e} {:>10?} {:>10?}",
            t.last_increase, t.observed, t.expected
        );
    }
    let ladder = GrowthLadder::new(2.0)?;
    println!("breakpoint deviation, β = 1: {:.1e}", breakpoint_deviation(&ladder, 256, 1.0)?);
    for k in [1, 4, 16, 64] {
        println!("refinement {k:>2}: mean off-breakpoint error {:.4e}", off_breakpoint_error(&ladder.refined(k)?, 64, 1.0)?);
    }
    Ok(())
}
