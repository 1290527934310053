use std::sync::Arc;

use nalgebra::{DVector, SymmetricEigen};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::{CMatrix, VnAlgebra, C64, ZERO_CLAMP};
use crate::error::{Error, Result};
use crate::rearrangement::StepFunction;

/// An element `x = ⊕_k x_k` of a [`VnAlgebra`].
#[derive(Debug, Clone)]
pub struct AlgElement {
    algebra: Arc<VnAlgebra>,
    blocks: Vec<CMatrix>,
}

/// Spectral data of a Hermitian element: per block, eigenvalues (ascending)
/// and the unitary of eigenvectors.
#[derive(Debug, Clone)]
pub(crate) struct HermitianEigen {
    pub values: Vec<Vec<f64>>,
    pub vectors: Vec<CMatrix>,
}

impl AlgElement {
    pub fn from_blocks(algebra: Arc<VnAlgebra>, blocks: Vec<CMatrix>) -> Result<Self> {
        if blocks.len() != algebra.blocks().len() {
            return Err(Error::ShapeMismatch(format!(
                "{} blocks for an algebra with {}",
                blocks.len(),
                algebra.blocks().len()
            )));
        }
        for (m, b) in blocks.iter().zip(algebra.blocks()) {
            if m.nrows() != b.n || m.ncols() != b.n {
                return Err(Error::ShapeMismatch(format!(
                    "{}x{} matrix in a block of size {}",
                    m.nrows(),
                    m.ncols(),
                    b.n
                )));
            }
        }
        Ok(AlgElement { algebra, blocks })
    }

    pub fn zeros(algebra: Arc<VnAlgebra>) -> Self {
        let blocks = algebra.blocks().iter().map(|b| CMatrix::zeros(b.n, b.n)).collect();
        AlgElement { algebra, blocks }
    }

    pub fn identity(algebra: Arc<VnAlgebra>) -> Self {
        let blocks = algebra.blocks().iter().map(|b| CMatrix::identity(b.n, b.n)).collect();
        AlgElement { algebra, blocks }
    }

    /// Element of a commutative algebra from its point values.
    pub fn from_values(algebra: Arc<VnAlgebra>, values: &[C64]) -> Result<Self> {
        if !algebra.is_commutative() {
            return Err(Error::NonCommutative);
        }
        if values.len() != algebra.blocks().len() {
            return Err(Error::ShapeMismatch(format!(
                "{} values for {} points",
                values.len(),
                algebra.blocks().len()
            )));
        }
        let blocks = values.iter().map(|&v| CMatrix::from_element(1, 1, v)).collect();
        Ok(AlgElement { algebra, blocks })
    }

    pub fn from_real_values(algebra: Arc<VnAlgebra>, values: &[f64]) -> Result<Self> {
        let v: Vec<C64> = values.iter().map(|&x| C64::new(x, 0.0)).collect();
        AlgElement::from_values(algebra, &v)
    }

    /// Block diagonal element with scalar `values[k]·1` in block `k`.
    pub fn from_block_scalars(algebra: Arc<VnAlgebra>, values: &[f64]) -> Result<Self> {
        if values.len() != algebra.blocks().len() {
            return Err(Error::ShapeMismatch("one scalar per block required".into()));
        }
        let blocks = algebra
            .blocks()
            .iter()
            .zip(values)
            .map(|(b, &v)| CMatrix::identity(b.n, b.n) * C64::new(v, 0.0))
            .collect();
        Ok(AlgElement { algebra, blocks })
    }

    /// Entries drawn i.i.d. from the standard complex Gaussian.
    pub fn random<R: Rng + ?Sized>(algebra: Arc<VnAlgebra>, rng: &mut R) -> Self {
        let blocks = algebra
            .blocks()
            .iter()
            .map(|b| CMatrix::from_fn(b.n, b.n, |_, _| random_c64(rng)))
            .collect();
        AlgElement { algebra, blocks }
    }

    /// Random positive invertible element with spectrum in `[lo, hi]`.
    pub fn random_positive<R: Rng + ?Sized>(algebra: Arc<VnAlgebra>, lo: f64, hi: f64, rng: &mut R) -> Self {
        let blocks = algebra
            .blocks()
            .iter()
            .map(|b| {
                let u = random_unitary(b.n, rng);
                let d = CMatrix::from_diagonal(&DVector::from_fn(b.n, |_, _| {
                    C64::new(lo + (hi - lo) * rng.random::<f64>(), 0.0)
                }));
                &u * d * u.adjoint()
            })
            .collect();
        AlgElement { algebra, blocks }.hermitian_part()
    }

    pub fn algebra(&self) -> &Arc<VnAlgebra> {
        &self.algebra
    }

    pub fn blocks(&self) -> &[CMatrix] {
        &self.blocks
    }

    /// Point values of an element of a commutative algebra.
    pub fn values(&self) -> Result<Vec<C64>> {
        if !self.algebra.is_commutative() {
            return Err(Error::NonCommutative);
        }
        Ok(self.blocks.iter().map(|m| m[(0, 0)]).collect())
    }

    /// Concatenation of the blocks, each flattened row-major.
    pub fn to_vector(&self) -> DVector<C64> {
        let mut out = Vec::with_capacity(self.algebra.dim());
        for m in &self.blocks {
            for i in 0..m.nrows() {
                for j in 0..m.ncols() {
                    out.push(m[(i, j)]);
                }
            }
        }
        DVector::from_vec(out)
    }

    pub fn from_vector(algebra: Arc<VnAlgebra>, v: &DVector<C64>) -> Result<Self> {
        if v.len() != algebra.dim() {
            return Err(Error::ShapeMismatch(format!("vector of length {} for dimension {}", v.len(), algebra.dim())));
        }
        let mut offset = 0;
        let mut blocks = Vec::with_capacity(algebra.blocks().len());
        for b in algebra.blocks() {
            blocks.push(CMatrix::from_fn(b.n, b.n, |i, j| v[offset + i * b.n + j]));
            offset += b.n * b.n;
        }
        Ok(AlgElement { algebra, blocks })
    }

    fn check_same(&self, other: &AlgElement) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::ShapeMismatch("elements live in different algebras".into()))
        }
    }

    fn zip_with(&self, other: &AlgElement, f: impl Fn(&CMatrix, &CMatrix) -> CMatrix) -> Result<Self> {
        self.check_same(other)?;
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| f(a, b)).collect();
        Ok(AlgElement { algebra: self.algebra.clone(), blocks })
    }

    fn map_blocks(&self, f: impl Fn(&CMatrix) -> CMatrix) -> Self {
        AlgElement { algebra: self.algebra.clone(), blocks: self.blocks.iter().map(f).collect() }
    }

    pub fn add(&self, other: &AlgElement) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &AlgElement) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &AlgElement) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale(&self, c: C64) -> Self {
        self.map_blocks(|m| m * c)
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(C64::new(c, 0.0))
    }

    pub fn adjoint(&self) -> Self {
        self.map_blocks(|m| m.adjoint())
    }

    /// `τ(x) = Σ_k w_k Tr(x_k)`.
    pub fn trace(&self) -> C64 {
        self.blocks
            .iter()
            .zip(self.algebra.blocks())
            .map(|(m, b)| m.trace() * b.w)
            .sum()
    }

    /// Largest entry of `|x − x*|`.
    pub fn hermitian_defect(&self) -> f64 {
        self.blocks
            .iter()
            .map(|m| (m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max))
            .fold(0.0, f64::max)
    }

    pub fn max_entry(&self) -> f64 {
        self.blocks
            .iter()
            .flat_map(|m| m.iter().map(|z| z.norm()))
            .fold(0.0, f64::max)
    }

    /// `(x + x*)/2`.
    pub fn hermitian_part(&self) -> Self {
        self.map_blocks(|m| (m + m.adjoint()) * C64::new(0.5, 0.0))
    }

    /// Singular values with their trace weights, block by block.
    pub fn singular_values(&self) -> Vec<(f64, f64)> {
        let mut raw = Vec::new();
        for (m, b) in self.blocks.iter().zip(self.algebra.blocks()) {
            if b.n == 1 {
                raw.push((m[(0, 0)].norm(), b.w));
            } else {
                let svd = m.clone().svd(false, false);
                let top = svd.singular_values.max();
                raw.extend(svd.singular_values.iter().map(|&s| (if s < ZERO_CLAMP * top { 0.0 } else { s }, b.w)));
            }
        }
        raw
    }

    /// Generalized singular value function `t ↦ μ(t; x)`.
    pub fn singular_value_function(&self) -> StepFunction {
        StepFunction::from_pieces(self.singular_values()).expect("singular values are finite")
    }

    /// `d(s; |x|) = τ(e^{|x|}(s, ∞))`.
    pub fn distribution_function(&self, s: f64) -> f64 {
        self.singular_values().iter().filter(|p| p.0 > s).map(|p| p.1).sum()
    }

    /// Operator norm, `μ(0; x)`.
    pub fn op_norm(&self) -> f64 {
        self.singular_values().iter().map(|p| p.0).fold(0.0, f64::max)
    }

    /// `‖x‖_{L^p} = τ(|x|^p)^{1/p}`; `p = ∞` gives the operator norm.
    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        if !(p > 0.0) {
            return Err(Error::InvalidExponent(format!("p = {p} must lie in (0, ∞]")));
        }
        if p.is_infinite() {
            return Ok(self.op_norm());
        }
        let sum: f64 = self
            .singular_values()
            .iter()
            .filter(|s| s.0 > 0.0)
            .map(|(s, w)| w * s.powf(p))
            .sum();
        Ok(sum.powf(1.0 / p))
    }

    /// `‖x‖_{L^{p,q}} = ‖μ(x)‖_{L^{p,q}(ℝ₊)}`.
    pub fn lorentz_norm(&self, p: f64, q: f64) -> Result<f64> {
        self.singular_value_function().lorentz_quasinorm(p, q)
    }

    pub(crate) fn hermitian_eigen(&self) -> Result<HermitianEigen> {
        let scale = self.max_entry().max(f64::MIN_POSITIVE);
        let defect = self.hermitian_defect();
        if defect > 1e-9 * scale.max(1.0) {
            return Err(Error::NotHermitian(defect));
        }
        let sym = self.hermitian_part();
        let mut values = Vec::with_capacity(sym.blocks.len());
        let mut vectors = Vec::with_capacity(sym.blocks.len());
        for m in &sym.blocks {
            if m.nrows() == 1 {
                values.push(vec![m[(0, 0)].re]);
                vectors.push(CMatrix::identity(1, 1));
            } else {
                let eig = SymmetricEigen::new(m.clone());
                let mut pairs: Vec<(f64, usize)> =
                    eig.eigenvalues.iter().copied().enumerate().map(|(i, v)| (v, i)).collect();
                pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
                let vecs = CMatrix::from_fn(m.nrows(), m.ncols(), |i, j| eig.eigenvectors[(i, pairs[j].1)]);
                let top = pairs.iter().map(|p| p.0.abs()).fold(0.0, f64::max);
                values.push(pairs.iter().map(|p| if p.0.abs() < ZERO_CLAMP * top { 0.0 } else { p.0 }).collect());
                vectors.push(vecs);
            }
        }
        Ok(HermitianEigen { values, vectors })
    }

    /// Eigenvalues of a Hermitian element with their trace weights.
    pub fn eigenvalues(&self) -> Result<Vec<(f64, f64)>> {
        let eig = self.hermitian_eigen()?;
        Ok(eig
            .values
            .iter()
            .zip(self.algebra.blocks())
            .flat_map(|(vals, b)| vals.iter().map(move |&v| (v, b.w)))
            .collect())
    }

    /// Borel functional calculus `ψ(x)` for Hermitian `x`.
    pub fn functional_calculus<F>(&self, psi: F) -> Result<Self>
    where
        F: Fn(f64) -> f64,
    {
        let eig = self.hermitian_eigen()?;
        Ok(rebuild(&self.algebra, &eig, psi))
    }

    /// `x^e` for positive `x`; negative powers require invertibility.
    pub fn positive_power(&self, e: f64) -> Result<Self> {
        let eig = self.hermitian_eigen()?;
        for &v in eig.values.iter().flatten() {
            if v < 0.0 {
                return Err(Error::Hypothesis(format!("element has negative eigenvalue {v}")));
            }
            if v == 0.0 && e < 0.0 {
                return Err(Error::NotInvertible);
            }
        }
        Ok(rebuild(&self.algebra, &eig, |v| if e == 0.0 { 1.0 } else { v.powf(e) }))
    }

    /// `x⁻¹` for Hermitian invertible `x`.
    pub fn hermitian_inverse(&self) -> Result<Self> {
        let eig = self.hermitian_eigen()?;
        if eig.values.iter().flatten().any(|&v| v == 0.0) {
            return Err(Error::NotInvertible);
        }
        Ok(rebuild(&self.algebra, &eig, |v| 1.0 / v))
    }

    /// `τ(E_{(a,b)}(x))` with both ends open.
    pub fn spectral_projection_trace(&self, a: f64, b: f64) -> Result<f64> {
        Ok(self
            .eigenvalues()?
            .iter()
            .filter(|(v, _)| *v > a && *v < b)
            .map(|p| p.1)
            .sum())
    }

    /// Largest entry of `|x − y|`.
    pub fn max_abs_diff(&self, other: &AlgElement) -> Result<f64> {
        Ok(self.sub(other)?.max_entry())
    }
}

fn rebuild(algebra: &Arc<VnAlgebra>, eig: &HermitianEigen, f: impl Fn(f64) -> f64) -> AlgElement {
    let blocks = eig
        .values
        .iter()
        .zip(&eig.vectors)
        .map(|(vals, u)| {
            if vals.len() == 1 {
                return CMatrix::from_element(1, 1, C64::new(f(vals[0]), 0.0) * u[(0, 0)] * u[(0, 0)].conj());
            }
            let d = CMatrix::from_diagonal(&DVector::from_iterator(vals.len(), vals.iter().map(|&v| C64::new(f(v), 0.0))));
            u * d * u.adjoint()
        })
        .collect();
    AlgElement { algebra: algebra.clone(), blocks }
}

pub(crate) fn random_c64<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Haar-ish random unitary from the QR factorisation of a Gaussian matrix.
pub(crate) fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let g = CMatrix::from_fn(n, n, |_, _| random_c64(rng));
    g.qr().q()
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    algebra: VnAlgebra,
    matrices: Vec<Vec<[f64; 2]>>,
}

impl Serialize for AlgElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let matrices = self
            .blocks
            .iter()
            .map(|m| {
                let mut row_major = Vec::with_capacity(m.len());
                for i in 0..m.nrows() {
                    for j in 0..m.ncols() {
                        row_major.push([m[(i, j)].re, m[(i, j)].im]);
                    }
                }
                row_major
            })
            .collect();
        ElementRepr { algebra: (*self.algebra).clone(), matrices }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = ElementRepr::deserialize(d)?;
        let algebra = Arc::new(repr.algebra);
        let mut blocks = Vec::new();
        for (flat, b) in repr.matrices.iter().zip(algebra.blocks()) {
            if flat.len() != b.n * b.n {
                return Err(serde::de::Error::custom("matrix size does not match block"));
            }
            blocks.push(CMatrix::from_fn(b.n, b.n, |i, j| {
                let [re, im] = flat[i * b.n + j];
                C64::new(re, im)
            }));
        }
        AlgElement::from_blocks(algebra, blocks).map_err(serde::de::Error::custom)
    }
}
