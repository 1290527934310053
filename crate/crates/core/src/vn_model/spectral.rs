use std::sync::Arc;

use super::{AlgElement, VnAlgebra};
use crate::error::{Error, Result};

/// `u ↦ τ(E_{(0,u)}(x))` for a positive element, stored as its ladder of
/// distinct positive eigenvalues and the accumulated weights up to each.
#[derive(Debug, Clone, PartialEq)]
pub struct CountingFunction {
    levels: Vec<f64>,
    cumulative: Vec<f64>,
}

impl CountingFunction {
    pub fn from_ladder(ladder: &[(f64, f64)]) -> Self {
        let mut levels: Vec<f64> = Vec::new();
        let mut cumulative: Vec<f64> = Vec::new();
        let mut acc = 0.0;
        for &(v, w) in ladder.iter().filter(|p| p.0 > 0.0) {
            acc += w;
            if levels.last() == Some(&v) {
                *cumulative.last_mut().unwrap() = acc;
            } else {
                levels.push(v);
                cumulative.push(acc);
            }
        }
        CountingFunction { levels, cumulative }
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    /// `τ(E_{(0,u)})`: weight of eigenvalues strictly inside `(0, u)`.
    pub fn eval(&self, u: f64) -> f64 {
        let idx = self.levels.partition_point(|&l| l < u);
        if idx == 0 {
            0.0
        } else {
            self.cumulative[idx - 1]
        }
    }

    /// `τ(E_{(0,u]})`, the limit of [`eval`](Self::eval) from the right.
    pub fn eval_closed(&self, u: f64) -> f64 {
        let idx = self.levels.partition_point(|&l| l <= u);
        if idx == 0 {
            0.0
        } else {
            self.cumulative[idx - 1]
        }
    }

    /// `(λ_i, τ(E_{(0,λ_i]}))` for each distinct positive eigenvalue.
    pub fn steps(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.levels.iter().copied().zip(self.cumulative.iter().copied())
    }
}

/// A positive semidefinite element (a reference operator `𝓓` or a
/// generator `𝓛`) with its spectral ladder and counting function.
#[derive(Debug, Clone)]
pub struct SpectralModel {
    element: AlgElement,
    ladder: Vec<(f64, f64)>,
    counting: CountingFunction,
}

impl SpectralModel {
    pub fn new(element: AlgElement) -> Result<Self> {
        let mut ladder = element.eigenvalues()?;
        if let Some(&(v, _)) = ladder.iter().find(|p| p.0 < 0.0) {
            return Err(Error::Hypothesis(format!("spectral model needs a positive element, found eigenvalue {v}")));
        }
        ladder.sort_by(|a, b| a.0.total_cmp(&b.0));
        let counting = CountingFunction::from_ladder(&ladder);
        Ok(SpectralModel { element, ladder, counting })
    }

    /// Diagonal model on `ℂ^m` with eigenvalue `λ_i` carrying weight `w_i`.
    pub fn diagonal(eigenvalues: &[f64], weights: &[f64]) -> Result<Self> {
        let alg = Arc::new(VnAlgebra::commutative(weights)?);
        SpectralModel::new(AlgElement::from_real_values(alg, eigenvalues)?)
    }

    pub fn element(&self) -> &AlgElement {
        &self.element
    }

    /// Eigenvalues in ascending order with their trace weights.
    pub fn ladder(&self) -> &[(f64, f64)] {
        &self.ladder
    }

    pub fn counting(&self) -> &CountingFunction {
        &self.counting
    }

    pub fn is_invertible(&self) -> bool {
        self.ladder.iter().all(|p| p.0 > 0.0)
    }

    /// `𝓓^e`; negative `e` needs an invertible model.
    pub fn power(&self, e: f64) -> Result<AlgElement> {
        self.element.positive_power(e)
    }

    pub fn apply<F: Fn(f64) -> f64>(&self, f: F) -> Result<AlgElement> {
        self.element.functional_calculus(f)
    }
}
