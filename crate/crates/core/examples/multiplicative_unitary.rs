//! The multiplicative unitary of a finite group: pentagon equation and
//! recovery of the group Fourier transform from a partial trace.

use nclab::fourier::{
    fourier_via_multiplicative_unitary, make_finite_group, multiplicative_unitary, pentagon_holds, FiniteGroup,
};
use nclab::vn_model::CMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> nclab::Result<()> {
    for g in [FiniteGroup::cyclic(4)?, FiniteGroup::symmetric(3)?, FiniteGroup::quaternion()?] {
        let w = multiplicative_unitary(&g);
        let unitarity = (w.adjoint() * &w - CMatrix::identity(w.nrows(), w.ncols())).norm();
        let f = make_finite_group(g.clone())?;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let x = f.random_source(&mut rng);
        let rec = fourier_via_multiplicative_unitary(&g, &x)?;
        let err = rec.transform.max_abs_diff(&f.forward(&x)?)?;
        println!(
            "{:<6} |G|² = {:>4}  ‖W*W − I‖ = {unitarity:.1e}  pentagon {}  transform error {err:.1e}  off-block {:.1e}",
            g.name(),
            w.nrows(),
            pentagon_holds(&g),
            rec.off_block_residual
        );
    }
    Ok(())
}
