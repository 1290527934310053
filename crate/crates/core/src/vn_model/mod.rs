//! Finite-dimensional semifinite von Neumann algebras.
//!
//! An algebra is a finite direct sum `⊕_k M_{n_k}(ℂ)` with trace
//! `τ(x) = Σ_k w_k Tr(x_k)`. In finite dimensions every element is
//! τ-measurable, so `L^0` is the algebra itself and the noncommutative
//! `L^p` and `L^{p,q}` norms reduce to weighted singular-value sums.

mod element;
mod pnorm;
mod spectral;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use element::AlgElement;
pub use pnorm::{exact_norm_1_to_inf, operator_norm_lower, operator_pnorm_bracket, NormBracket};
pub use spectral::{CountingFunction, SpectralModel};

pub type C64 = nalgebra::Complex<f64>;
pub type CMatrix = nalgebra::DMatrix<C64>;

/// Relative threshold below which Hermitian eigenvalues and singular values
/// are treated as exact zeros.
pub const ZERO_CLAMP: f64 = 1e-12;

/// One matrix block `M_n` carrying trace weight `w`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Block {
    pub n: usize,
    pub w: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "AlgebraRepr", into = "AlgebraRepr")]
pub struct VnAlgebra {
    blocks: Vec<Block>,
}

#[derive(Serialize, Deserialize)]
struct AlgebraRepr {
    blocks: Vec<Block>,
}

impl TryFrom<AlgebraRepr> for VnAlgebra {
    type Error = Error;
    fn try_from(r: AlgebraRepr) -> Result<Self> {
        VnAlgebra::new(r.blocks)
    }
}

impl From<VnAlgebra> for AlgebraRepr {
    fn from(a: VnAlgebra) -> Self {
        AlgebraRepr { blocks: a.blocks }
    }
}

impl VnAlgebra {
    pub fn new(blocks: Vec<Block>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidAlgebra("no blocks".into()));
        }
        for b in &blocks {
            if b.n == 0 {
                return Err(Error::InvalidAlgebra("block dimension must be positive".into()));
            }
            if !(b.w > 0.0 && b.w.is_finite()) {
                return Err(Error::InvalidAlgebra(format!("trace weight {} must be positive", b.w)));
            }
        }
        Ok(VnAlgebra { blocks })
    }

    /// `ℂ^m` with the given point masses.
    pub fn commutative(weights: &[f64]) -> Result<Self> {
        VnAlgebra::new(weights.iter().map(|&w| Block { n: 1, w }).collect())
    }

    /// `ℂ^m` with every point carrying weight `w`.
    pub fn uniform(m: usize, w: f64) -> Result<Self> {
        VnAlgebra::commutative(&vec![w; m])
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn is_commutative(&self) -> bool {
        self.blocks.iter().all(|b| b.n == 1)
    }

    /// `τ(1) = Σ_k w_k n_k`.
    pub fn total_trace(&self) -> f64 {
        self.blocks.iter().map(|b| b.w * b.n as f64).sum()
    }

    /// Complex dimension `Σ_k n_k²`.
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.n * b.n).sum()
    }

    pub fn min_weight(&self) -> f64 {
        self.blocks.iter().map(|b| b.w).fold(f64::INFINITY, f64::min)
    }

    pub fn into_arc(self) -> Arc<VnAlgebra> {
        Arc::new(self)
    }
}
