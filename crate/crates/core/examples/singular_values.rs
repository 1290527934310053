//! Singular value functions and Lorentz norms of a random element of
//! `M_2 ⊕ M_3` with unequal block weights.

use nclab::vn_model::{AlgElement, Block, VnAlgebra};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> nclab::Result<()> {
    let alg = VnAlgebra::new(vec![Block { n: 2, w: 0.5 }, Block { n: 3, w: 0.25 }])?.into_arc();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let x = AlgElement::random(alg.clone(), &mut rng);
    let y = AlgElement::random(alg, &mut rng);

    let mu = x.singular_value_function();
    println!("μ(x):");
    for (a, b, v) in mu.pieces() {
        println!("  [{a:.4}, {b:.4})  {v:.6}");
    }
    for (p, q) in [(1.0, 1.0), (2.0, 2.0), (2.0, 1.0), (3.0, f64::INFINITY)] {
        println!("‖x‖_({p},{q}) = {:.6}", x.lorentz_norm(p, q)?);
    }
    let sub = nclab::inequality::check_submultiplicativity(&x, &y)?;
    println!("μ(t+s, xy) ≤ μ(t,x)μ(s,y): {} pairs, {} violations", sub.checked, sub.violations);
    Ok(())
}
