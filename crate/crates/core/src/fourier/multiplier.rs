use crate::error::{Error, Result};
use crate::vn_model::{AlgElement, CMatrix, C64};

use super::FourierStructure;

/// `f ↦ 𝓕̂(σ · 𝓕 f)` for a symbol `σ` in the dual algebra.
#[derive(Debug, Clone)]
pub struct MultiplierOp {
    structure: FourierStructure,
    symbol: AlgElement,
}

impl MultiplierOp {
    pub fn new(structure: FourierStructure, symbol: AlgElement) -> Result<Self> {
        if symbol.algebra().as_ref() != structure.dual().as_ref() {
            return Err(Error::ShapeMismatch("symbol must live on the dual algebra".into()));
        }
        Ok(MultiplierOp { structure, symbol })
    }

    pub fn identity(structure: FourierStructure) -> Self {
        let symbol = AlgElement::identity(structure.dual().clone());
        MultiplierOp { structure, symbol }
    }

    pub fn structure(&self) -> &FourierStructure {
        &self.structure
    }

    pub fn symbol(&self) -> &AlgElement {
        &self.symbol
    }

    pub fn apply(&self, f: &AlgElement) -> Result<AlgElement> {
        let hat = self.structure.forward(f)?;
        self.structure.inverse(&self.symbol.mul(&hat)?)
    }

    /// Symbol `σ₁σ₂`; acts as `self ∘ other`.
    pub fn compose(&self, other: &MultiplierOp) -> Result<MultiplierOp> {
        MultiplierOp::new(self.structure.clone(), self.symbol.mul(&other.symbol)?)
    }

    pub fn scaled(&self, c: f64) -> MultiplierOp {
        MultiplierOp { structure: self.structure.clone(), symbol: self.symbol.scale_real(c) }
    }

    /// Matrix of the operator in the point basis of a commutative source:
    /// column `j` is the image of `δ_j`.
    pub fn kernel(&self) -> Result<CMatrix> {
        let source = self.structure.source().clone();
        if !source.is_commutative() {
            return Err(Error::NonCommutative);
        }
        let m = source.blocks().len();
        let mut k = CMatrix::zeros(m, m);
        let mut basis = vec![C64::new(0.0, 0.0); m];
        for j in 0..m {
            basis[j] = C64::new(1.0, 0.0);
            let image = self.apply(&AlgElement::from_values(source.clone(), &basis)?)?.values()?;
            basis[j] = C64::new(0.0, 0.0);
            for (i, v) in image.into_iter().enumerate() {
                k[(i, j)] = v;
            }
        }
        Ok(k)
    }
}

pub fn apply_multiplier(m: &MultiplierOp, f: &AlgElement) -> Result<AlgElement> {
    m.apply(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::{make_cyclic, make_finite_group, FiniteGroup};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_symbol_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for f in [make_cyclic(9).unwrap(), make_finite_group(FiniteGroup::symmetric(4).unwrap()).unwrap()] {
            let id = MultiplierOp::identity(f.clone());
            let x = f.random_source(&mut rng);
            assert!(id.apply(&x).unwrap().max_abs_diff(&x).unwrap() < 1e-10);
        }
    }

    #[test]
    fn zero_frequency_projects_onto_mean() {
        let f = make_cyclic(8).unwrap();
        let mut ind = vec![0.0; 8];
        ind[0] = 1.0;
        let sym = AlgElement::from_real_values(f.dual().clone(), &ind).unwrap();
        let m = MultiplierOp::new(f.clone(), sym).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let x = f.random_source(&mut rng);
        let vals = x.values().unwrap();
        let mean: C64 = vals.iter().sum::<C64>() / 8.0;
        for v in m.apply(&x).unwrap().values().unwrap() {
            assert!((v - mean).norm() < 1e-12);
        }
    }

    #[test]
    fn module_identity_and_composition() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = make_finite_group(FiniteGroup::dihedral4().unwrap()).unwrap();
        let a = MultiplierOp::new(f.clone(), f.random_dual(&mut rng)).unwrap();
        let b = MultiplierOp::new(f.clone(), f.random_dual(&mut rng)).unwrap();
        let x = f.random_source(&mut rng);
        let lhs = f.forward(&a.apply(&x).unwrap()).unwrap();
        let rhs = a.symbol().mul(&f.forward(&x).unwrap()).unwrap();
        assert!(lhs.sub(&rhs).unwrap().lp_norm(2.0).unwrap() < 1e-10);
        let seq = a.apply(&b.apply(&x).unwrap()).unwrap();
        let joint = a.compose(&b).unwrap().apply(&x).unwrap();
        assert!(seq.max_abs_diff(&joint).unwrap() < 1e-10);
    }

    #[test]
    fn kernel_of_cyclic_multiplier_is_circulant() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let f = make_cyclic(6).unwrap();
        let k = MultiplierOp::new(f.clone(), f.random_dual(&mut rng)).unwrap().kernel().unwrap();
        for i in 0..6 {
            for j in 0..6 {
                assert!((k[(i, j)] - k[((i + 1) % 6, (j + 1) % 6)]).norm() < 1e-12);
            }
        }
        let wrong = MultiplierOp::new(f, AlgElement::random(make_cyclic(5).unwrap().dual().clone(), &mut rng));
        assert!(wrong.is_err());
    }
}
