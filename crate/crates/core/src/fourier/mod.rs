//! Fourier structures: a source algebra, a dual algebra and a pair of
//! mutually inverse linear transforms between them.
//!
//! Transforms are stored as dense matrices acting on the vectorized form of
//! an element (blocks concatenated, each flattened row-major), which keeps
//! every instance on the same code path.

mod axioms;
mod groups;
mod multiplier;
mod unitary;

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use nalgebra::DVector;
use rand::Rng;

use crate::error::{Error, Result};
use crate::vn_model::{AlgElement, Block, CMatrix, SpectralModel, VnAlgebra, C64};

pub use axioms::{check_axioms, random_axiom_check, AxiomReport};
pub use groups::{FiniteGroup, GroupTable, Irrep};
pub use multiplier::{apply_multiplier, MultiplierOp};
pub use unitary::{fourier_via_multiplicative_unitary, multiplicative_unitary, pentagon_holds, UnitaryReconstruction};

#[derive(Debug, Clone, PartialEq)]
pub enum Descriptor {
    Cyclic(usize),
    Group(String),
    Trivial,
    /// Source and dual exchanged.
    Dual(Box<Descriptor>),
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Descriptor::Cyclic(n) => write!(f, "cyclic:{n}"),
            Descriptor::Group(name) => write!(f, "group:{name}"),
            Descriptor::Trivial => write!(f, "trivial"),
            Descriptor::Dual(inner) => write!(f, "dual:{inner}"),
        }
    }
}

#[derive(Debug)]
enum Kind {
    Cyclic(usize),
    Group(Arc<FiniteGroup>),
    Trivial,
}

#[derive(Debug)]
struct Inner {
    source: Arc<VnAlgebra>,
    dual: Arc<VnAlgebra>,
    /// `None` means the identity map.
    forward: Option<CMatrix>,
    inverse: Option<CMatrix>,
    kind: Kind,
    swapped: bool,
}

/// Cheap to clone; all clones share the transform matrices.
#[derive(Debug, Clone)]
pub struct FourierStructure {
    inner: Arc<Inner>,
}

/// `ℤ_N`: counting measure on the source, weight `1/N` on the dual,
/// `f̂(k) = Σ_g f(g) e^{−2πi gk/N}`.
pub fn make_cyclic(n: usize) -> Result<FourierStructure> {
    if n == 0 {
        return Err(Error::InvalidGroup("cyclic order must be positive".into()));
    }
    let source = VnAlgebra::uniform(n, 1.0)?.into_arc();
    let dual = VnAlgebra::uniform(n, 1.0 / n as f64)?.into_arc();
    let forward = CMatrix::from_fn(n, n, |k, g| groups::root_of_unity(g * k, n).conj());
    let inverse = CMatrix::from_fn(n, n, |g, k| groups::root_of_unity(g * k, n) / n as f64);
    Ok(FourierStructure::build(source, dual, Some(forward), Some(inverse), Kind::Cyclic(n)))
}

/// Group algebra of a finite group: `f̂(π) = Σ_g f(g) π(g)*` with dual trace
/// `(1/|G|) Σ_π d_π Tr`.
pub fn make_finite_group(group: FiniteGroup) -> Result<FourierStructure> {
    let order = group.order();
    let source = VnAlgebra::uniform(order, 1.0)?.into_arc();
    let dual = VnAlgebra::new(
        group.irreps().iter().map(|r| Block { n: r.dim, w: r.dim as f64 / order as f64 }).collect(),
    )?
    .into_arc();
    let dim = dual.dim();
    let mut forward = CMatrix::zeros(dim, order);
    let mut inverse = CMatrix::zeros(order, dim);
    let mut offset = 0;
    for r in group.irreps() {
        let d = r.dim;
        let scale = d as f64 / order as f64;
        for (g, m) in r.matrices.iter().enumerate() {
            for i in 0..d {
                for j in 0..d {
                    let row = offset + i * d + j;
                    forward[(row, g)] = m[(j, i)].conj();
                    inverse[(g, row)] = m[(j, i)] * scale;
                }
            }
        }
        offset += d * d;
    }
    Ok(FourierStructure::build(source, dual, Some(forward), Some(inverse), Kind::Group(Arc::new(group))))
}

/// Self-dual identity instance. The `L¹ → L^∞` contraction forces every
/// trace weight to be at least 1.
pub fn make_trivial(alg: VnAlgebra) -> Result<FourierStructure> {
    if alg.min_weight() < 1.0 {
        return Err(Error::InvalidAlgebra(format!(
            "trivial instance needs trace weights ≥ 1, smallest is {}",
            alg.min_weight()
        )));
    }
    let alg = alg.into_arc();
    Ok(FourierStructure::build(alg.clone(), alg, None, None, Kind::Trivial))
}

/// Parses `cyclic:N`, `group:NAME`, `trivial:w1,w2,..` (one `M_1` block per
/// weight, or `NxW` for an `M_N` block) and `dual:<instance>`.
pub fn parse_instance(text: &str) -> Result<FourierStructure> {
    let bad = || Error::Config(format!("unrecognised instance {text:?}"));
    let (head, rest) = text.split_once(':').ok_or_else(bad)?;
    match head {
        "cyclic" => make_cyclic(rest.parse().map_err(|_| bad())?),
        "group" => make_finite_group(FiniteGroup::bundled(rest)?),
        "dual" => Ok(parse_instance(rest)?.swapped()),
        "trivial" => {
            let mut blocks = Vec::new();
            for part in rest.split(',') {
                let (n, w) = match part.split_once('x') {
                    Some((n, w)) => (n.trim().parse().map_err(|_| bad())?, w.trim().parse().map_err(|_| bad())?),
                    None => (1, part.trim().parse().map_err(|_| bad())?),
                };
                blocks.push(Block { n, w });
            }
            make_trivial(VnAlgebra::new(blocks)?)
        }
        _ => Err(bad()),
    }
}

impl FourierStructure {
    fn build(
        source: Arc<VnAlgebra>,
        dual: Arc<VnAlgebra>,
        forward: Option<CMatrix>,
        inverse: Option<CMatrix>,
        kind: Kind,
    ) -> Self {
        FourierStructure { inner: Arc::new(Inner { source, dual, forward, inverse, kind, swapped: false }) }
    }

    pub fn source(&self) -> &Arc<VnAlgebra> {
        &self.inner.source
    }

    pub fn dual(&self) -> &Arc<VnAlgebra> {
        &self.inner.dual
    }

    pub fn is_swapped(&self) -> bool {
        self.inner.swapped
    }

    /// The underlying group for group and cyclic-free group instances.
    pub fn group(&self) -> Option<&FiniteGroup> {
        match &self.inner.kind {
            Kind::Group(g) => Some(g),
            _ => None,
        }
    }

    pub fn descriptor(&self) -> Descriptor {
        let base = match &self.inner.kind {
            Kind::Cyclic(n) => Descriptor::Cyclic(*n),
            Kind::Group(g) => Descriptor::Group(g.name().to_string()),
            Kind::Trivial => Descriptor::Trivial,
        };
        if self.inner.swapped {
            Descriptor::Dual(Box::new(base))
        } else {
            base
        }
    }

    /// The instance with source and dual (and the two transforms) exchanged.
    pub fn swapped(&self) -> FourierStructure {
        let i = &self.inner;
        let kind = match &i.kind {
            Kind::Cyclic(n) => Kind::Cyclic(*n),
            Kind::Group(g) => Kind::Group(g.clone()),
            Kind::Trivial => Kind::Trivial,
        };
        FourierStructure {
            inner: Arc::new(Inner {
                source: i.dual.clone(),
                dual: i.source.clone(),
                forward: i.inverse.clone(),
                inverse: i.forward.clone(),
                kind,
                swapped: !i.swapped,
            }),
        }
    }

    pub fn forward(&self, x: &AlgElement) -> Result<AlgElement> {
        transform(x, &self.inner.source, &self.inner.dual, self.inner.forward.as_ref())
    }

    pub fn inverse(&self, y: &AlgElement) -> Result<AlgElement> {
        transform(y, &self.inner.dual, &self.inner.source, self.inner.inverse.as_ref())
    }

    pub fn random_source<R: Rng + ?Sized>(&self, rng: &mut R) -> AlgElement {
        AlgElement::random(self.inner.source.clone(), rng)
    }

    pub fn random_dual<R: Rng + ?Sized>(&self, rng: &mut R) -> AlgElement {
        AlgElement::random(self.inner.dual.clone(), rng)
    }

    /// Positive generator on the dual side: `4 sin²(πk/N)` on `ℤ_N`,
    /// `Σ_{s∈S} (I − π(s))` over the symmetric generators of a group, and
    /// `4 sin²(πg/N)` or the word length on the source of a swapped instance.
    pub fn laplacian_symbol(&self) -> Result<AlgElement> {
        let dual = self.inner.dual.clone();
        match (&self.inner.kind, self.inner.swapped) {
            (Kind::Cyclic(n), _) => {
                let v: Vec<f64> = (0..*n).map(|k| 4.0 * (PI * k as f64 / *n as f64).sin().powi(2)).collect();
                AlgElement::from_real_values(dual, &v)
            }
            (Kind::Group(g), false) => {
                let gens = g.symmetric_generators();
                let blocks = g
                    .irreps()
                    .iter()
                    .map(|r| {
                        let id = CMatrix::identity(r.dim, r.dim);
                        gens.iter().fold(CMatrix::zeros(r.dim, r.dim), |acc, &s| acc + (&id - &r.matrices[s]))
                    })
                    .collect();
                AlgElement::from_blocks(dual, blocks)?.hermitian_part_checked()
            }
            (Kind::Group(g), true) => {
                let v: Vec<f64> = g.word_lengths().iter().map(|&l| l as f64).collect();
                AlgElement::from_real_values(dual, &v)
            }
            (Kind::Trivial, _) => Err(Error::Hypothesis("the trivial instance has no canonical generator".into())),
        }
    }

    /// Default reference operator `𝓓` on the dual: `(1 + |k|²)^{1/2}` with
    /// `|k| = min(k, N−k)` on `ℤ_N`, `(I + Σ_{s∈S}(I − π(s)))^{1/2}` on a
    /// group dual, `(1 + ℓ(g)²)^{1/2}` with word length `ℓ` on the source of
    /// a swapped group instance, and `(1 + k²)^{1/2}` over block index `k`
    /// on the trivial instance.
    pub fn default_reference(&self) -> Result<SpectralModel> {
        let dual = self.inner.dual.clone();
        let bracket = |v: &[usize]| -> Vec<f64> { v.iter().map(|&k| (1.0 + (k * k) as f64).sqrt()).collect() };
        let element = match (&self.inner.kind, self.inner.swapped) {
            (Kind::Cyclic(n), _) => {
                let k: Vec<usize> = (0..*n).map(|k| k.min(n - k)).collect();
                AlgElement::from_real_values(dual, &bracket(&k))?
            }
            (Kind::Group(_), false) => {
                let lap = self.laplacian_symbol()?;
                let shifted = lap.add(&AlgElement::identity(dual))?;
                shifted.positive_power(0.5)?
            }
            (Kind::Group(g), true) => AlgElement::from_real_values(dual, &bracket(&g.word_lengths()))?,
            (Kind::Trivial, _) => {
                let k: Vec<usize> = (0..dual.blocks().len()).collect();
                AlgElement::from_block_scalars(dual, &bracket(&k))?
            }
        };
        SpectralModel::new(element)
    }
}

fn transform(x: &AlgElement, from: &Arc<VnAlgebra>, to: &Arc<VnAlgebra>, m: Option<&CMatrix>) -> Result<AlgElement> {
    if x.algebra().as_ref() != from.as_ref() {
        return Err(Error::ShapeMismatch("element does not live on the transform's domain algebra".into()));
    }
    match m {
        None => AlgElement::from_blocks(to.clone(), x.blocks().to_vec()),
        Some(m) => {
            let v: DVector<C64> = m * x.to_vector();
            AlgElement::from_vector(to.clone(), &v)
        }
    }
}

impl AlgElement {
    /// Hermitian part after asserting the defect is rounding-sized.
    fn hermitian_part_checked(self) -> Result<AlgElement> {
        let defect = self.hermitian_defect();
        if defect > 1e-9 * self.max_entry().max(1.0) {
            return Err(Error::NotHermitian(defect));
        }
        Ok(self.hermitian_part())
    }
}
