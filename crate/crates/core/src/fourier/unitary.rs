//! The multiplicative unitary `Wξ(p,q) = ξ(p, p⁻¹q)` of a finite group and
//! the Fourier transform recovered from it by a partial trace.

use crate::error::Result;
use crate::vn_model::{AlgElement, CMatrix, VnAlgebra, C64};

use super::{make_finite_group, FiniteGroup};

/// Index map of `W` on `ℓ²(G×G)`: `(Wξ)[i] = ξ[perm[i]]`, pairs `(p, q)`
/// stored at `p·|G| + q`.
fn unitary_permutation(g: &FiniteGroup) -> Vec<usize> {
    let n = g.order();
    (0..n * n).map(|i| {
        let (p, q) = (i / n, i % n);
        p * n + g.mul(g.inverse(p), q)
    }).collect()
}

pub fn multiplicative_unitary(g: &FiniteGroup) -> CMatrix {
    let n = g.order();
    let perm = unitary_permutation(g);
    let mut w = CMatrix::zeros(n * n, n * n);
    for (i, &j) in perm.iter().enumerate() {
        w[(i, j)] = C64::new(1.0, 0.0);
    }
    w
}

/// `W₁₂W₁₃W₂₃ = W₂₃W₁₂` on `ℓ²(G×G×G)`, compared as index maps.
pub fn pentagon_holds(g: &FiniteGroup) -> bool {
    let n = g.order();
    let w = unitary_permutation(g);
    // each leg operator as a substitution on triples (a, b, c)
    let w12 = |(a, b, c): (usize, usize, usize)| {
        let j = w[a * n + b];
        (j / n, j % n, c)
    };
    let w13 = |(a, b, c): (usize, usize, usize)| {
        let j = w[a * n + c];
        (j / n, b, j % n)
    };
    let w23 = |(a, b, c): (usize, usize, usize)| {
        let j = w[b * n + c];
        (a, j / n, j % n)
    };
    // (XYξ)(i) = ξ(y(x(i))): substitutions apply left to right
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let t = (a, b, c);
                if w23(w13(w12(t))) != w12(w23(t)) {
                    return false;
                }
            }
        }
    }
    true
}

#[derive(Debug, Clone)]
pub struct UnitaryReconstruction {
    /// Blocks read off `(τ_L ⊗ Id)(W(x̌ ⊗ 1))` in Peter–Weyl coordinates.
    pub transform: AlgElement,
    /// Largest entry outside the block-diagonal, multiplicity-repeated
    /// pattern; zero up to rounding.
    pub off_block_residual: f64,
}

/// Fourier transform of `x` recovered from the multiplicative unitary.
///
/// The partial trace of `W(x ⊗ 1)` over the first leg is the left-regular
/// image `λ(x) = Σ_p x(p)λ(p)`. Conjugating by the Peter–Weyl unitary turns
/// it into `⊕_π (Σ_p x(p)π(p)) ⊗ I_{d_π}`, which is the group transform of
/// the reflected function `x̌(p) = x(p⁻¹)`. Feeding `x̌` in therefore
/// returns the transform of `x` itself.
pub fn fourier_via_multiplicative_unitary(g: &FiniteGroup, x: &AlgElement) -> Result<UnitaryReconstruction> {
    let n = g.order();
    let values = x.values()?;
    if values.len() != n {
        return Err(crate::Error::ShapeMismatch(format!("expected {n} values, got {}", values.len())));
    }
    let reflected: Vec<C64> = (0..n).map(|p| values[g.inverse(p)]).collect();

    let w = multiplicative_unitary(g);
    // W (x̌ ⊗ 1): right multiplication by a diagonal scales columns
    let mut wx = w;
    for col in 0..n * n {
        let s = reflected[col / n];
        wx.column_mut(col).iter_mut().for_each(|z| *z *= s);
    }
    // counting trace on the first leg
    let mut lambda = CMatrix::zeros(n, n);
    for p in 0..n {
        for q in 0..n {
            for q2 in 0..n {
                lambda[(q, q2)] += wx[(p * n + q, p * n + q2)];
            }
        }
    }

    let mut pw = CMatrix::zeros(n, n);
    let mut offsets = Vec::new();
    let mut row = 0;
    for r in g.irreps() {
        offsets.push(row);
        let scale = (r.dim as f64 / n as f64).sqrt();
        for i in 0..r.dim {
            for j in 0..r.dim {
                for (h, m) in r.matrices.iter().enumerate() {
                    pw[(row + i * r.dim + j, h)] = m[(i, j)] * scale;
                }
            }
        }
        row += r.dim * r.dim;
    }
    let conj = &pw * lambda * pw.adjoint();

    let mut expected = CMatrix::zeros(n, n);
    let mut blocks = Vec::new();
    for (r, &off) in g.irreps().iter().zip(&offsets) {
        let d = r.dim;
        let at = |i: usize, j: usize| off + i * d + j;
        let block = CMatrix::from_fn(d, d, |i, k| conj[(at(i, 0), at(k, 0))]);
        for i in 0..d {
            for k in 0..d {
                for j in 0..d {
                    expected[(at(i, j), at(k, j))] = block[(i, k)];
                }
            }
        }
        blocks.push(block);
    }
    let off_block_residual = (conj - expected).iter().map(|z| z.norm()).fold(0.0, f64::max);
    let dual: VnAlgebra = make_finite_group(g.clone())?.dual().as_ref().clone();
    let transform = AlgElement::from_blocks(dual.into_arc(), blocks)?;
    Ok(UnitaryReconstruction { transform, off_block_residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn z2_unitary_is_the_shear() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let w = multiplicative_unitary(&g);
        // (p, q) ↦ (p, p + q): the only off-diagonal swap is between (1,0) and (1,1)
        let expected = [[1., 0., 0., 0.], [0., 1., 0., 0.], [0., 0., 0., 1.], [0., 0., 1., 0.]];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(w[(i, j)].re, expected[i][j]);
            }
        }
        let id = CMatrix::identity(4, 4);
        assert_eq!(&w * &w, id);
        assert!(pentagon_holds(&g));
    }

    #[test]
    fn s3_unitary_is_unitary() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let w = multiplicative_unitary(&g);
        assert_eq!(w.nrows(), 36);
        assert_eq!(w.adjoint() * &w, CMatrix::identity(36, 36));
        assert!(pentagon_holds(&g));
    }

    #[test]
    fn reconstruction_matches_forward_map() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for g in [FiniteGroup::cyclic(4).unwrap(), FiniteGroup::symmetric(3).unwrap(), FiniteGroup::quaternion().unwrap()] {
            let f = make_finite_group(g.clone()).unwrap();
            for _ in 0..20 {
                let x = f.random_source(&mut rng);
                let rec = fourier_via_multiplicative_unitary(&g, &x).unwrap();
                let direct = f.forward(&x).unwrap();
                assert!(rec.transform.max_abs_diff(&direct).unwrap() < 1e-12, "{}", g.name());
                assert!(rec.off_block_residual < 1e-12);
            }
        }
    }
}
