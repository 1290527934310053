//! Numerical check of the Fourier-structure axioms on given elements.

use rand::Rng;
use serde::Serialize;

use crate::error::Result;
use crate::vn_model::AlgElement;

use super::{FourierStructure, MultiplierOp};

pub const RELATIVE_TOL: f64 = 1e-10;
pub const SLACK_TOL: f64 = -1e-12;

/// Relative errors of the identities and relative slacks of the
/// contractions, in both directions.
#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub inversion_source: f64,
    pub inversion_dual: f64,
    pub plancherel_source: f64,
    pub plancherel_dual: f64,
    /// `(‖x‖₁ − ‖𝓕x‖_∞) / ‖x‖₁`.
    pub contraction_source: f64,
    /// `(‖y‖₁ − ‖𝓕̂y‖_∞) / ‖y‖₁`.
    pub contraction_dual: f64,
    /// `‖𝓕(Ax) − σ𝓕(x)‖₂ / (‖σ‖_∞‖x‖₂)`.
    pub module_source: f64,
    /// `‖𝓕̂(a ▷ y) − a𝓕̂(y)‖₂ / (‖a‖_∞‖y‖₂)` where `a ▷ y = 𝓕(a𝓕̂y)`.
    pub module_dual: f64,
}

impl AxiomReport {
    pub fn worst_identity_error(&self) -> f64 {
        [
            self.inversion_source,
            self.inversion_dual,
            self.plancherel_source,
            self.plancherel_dual,
            self.module_source,
            self.module_dual,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn worst_slack(&self) -> f64 {
        self.contraction_source.min(self.contraction_dual)
    }

    pub fn passes(&self) -> bool {
        self.worst_identity_error() < RELATIVE_TOL && self.worst_slack() >= SLACK_TOL
    }
}

fn rel(err: f64, scale: f64) -> f64 {
    if scale == 0.0 {
        err
    } else {
        err / scale
    }
}

fn l2(x: &AlgElement) -> Result<f64> {
    x.lp_norm(2.0)
}

/// `x` and `a` live on the source, `y` and `sigma` on the dual.
pub fn check_axioms(
    f: &FourierStructure,
    x: &AlgElement,
    y: &AlgElement,
    sigma: &AlgElement,
    a: &AlgElement,
) -> Result<AxiomReport> {
    let fx = f.forward(x)?;
    let gy = f.inverse(y)?;

    let inversion_source = rel(l2(&f.inverse(&fx)?.sub(x)?)?, l2(x)?);
    let inversion_dual = rel(l2(&f.forward(&gy)?.sub(y)?)?, l2(y)?);

    let energy = |z: &AlgElement| z.adjoint().mul(z).map(|p| p.trace().re);
    let ex = energy(x)?;
    let ey = energy(y)?;
    let plancherel_source = rel((energy(&fx)? - ex).abs(), ex);
    let plancherel_dual = rel((energy(&gy)? - ey).abs(), ey);

    let slack = |input: &AlgElement, image: &AlgElement| -> Result<f64> {
        let n1 = input.lp_norm(1.0)?;
        Ok(rel(n1 - image.op_norm(), n1))
    };
    let contraction_source = slack(x, &fx)?;
    let contraction_dual = slack(y, &gy)?;

    let m = MultiplierOp::new(f.clone(), sigma.clone())?;
    let module_source = rel(
        l2(&f.forward(&m.apply(x)?)?.sub(&sigma.mul(&fx)?)?)?,
        sigma.op_norm() * l2(x)?,
    );
    let acted = f.forward(&a.mul(&gy)?)?;
    let module_dual = rel(l2(&f.inverse(&acted)?.sub(&a.mul(&gy)?)?)?, a.op_norm() * l2(y)?);

    Ok(AxiomReport {
        inversion_source,
        inversion_dual,
        plancherel_source,
        plancherel_dual,
        contraction_source,
        contraction_dual,
        module_source,
        module_dual,
    })
}

pub fn random_axiom_check<R: Rng + ?Sized>(f: &FourierStructure, rng: &mut R) -> Result<AxiomReport> {
    let x = f.random_source(rng);
    let y = f.random_dual(rng);
    let sigma = f.random_dual(rng);
    let a = f.random_source(rng);
    check_axioms(f, &x, &y, &sigma, &a)
}
