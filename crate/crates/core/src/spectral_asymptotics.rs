//! Spectral growth of reference operators and decay of heat propagators.
//!
//! A growth ladder is the diagonal model with eigenvalues `i^{1/α}` of unit
//! weight, so that the counting function `τ(E_{(0,s)})` equals `⌈s^α⌉ − 1`.
//! Splitting every unit of weight into `k` equal pieces refines it toward
//! the continuous profile `s^α`.

use std::fmt::Write as _;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fourier::{FourierStructure, MultiplierOp};
use crate::inequality::{format_real, multiplier_r};
use crate::vn_model::{exact_norm_1_to_inf, operator_norm_lower, operator_pnorm_bracket, AlgElement, SpectralModel};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrowthLadder {
    alpha: f64,
    refinement: usize,
}

impl GrowthLadder {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidExponent(format!("growth exponent {alpha} must be positive")));
        }
        Ok(GrowthLadder { alpha, refinement: 1 })
    }

    /// Every eigenvalue `i^{1/α}` replaced by `k` eigenvalues `(j/k)^{1/α}`
    /// of weight `1/k`.
    pub fn refined(self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Hypothesis("refinement factor must be positive".into()));
        }
        Ok(GrowthLadder { refinement: k, ..self })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn refinement(&self) -> usize {
        self.refinement
    }

    /// Model cut off at total weight `m`.
    pub fn model(&self, m: usize) -> Result<SpectralModel> {
        if m == 0 {
            return Err(Error::Hypothesis("ladder dimension must be positive".into()));
        }
        let k = self.refinement;
        let eig: Vec<f64> = (1..=m * k).map(|j| (j as f64 / k as f64).powf(1.0 / self.alpha)).collect();
        SpectralModel::diagonal(&eig, &vec![1.0 / k as f64; m * k])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MuComparison {
    pub t: f64,
    /// `μ(t, ψ(𝓓⁻¹))`, right-continuous.
    pub computed: f64,
    /// `μ(t⁻, ψ(𝓓⁻¹))`.
    pub left_limit: f64,
    /// `ψ(t^{−1/α})`.
    pub predicted: f64,
}

impl MuComparison {
    pub fn relative_gap(&self) -> f64 {
        (self.computed - self.predicted).abs() / self.predicted.abs()
    }
}

/// Singular value function of `ψ(𝓓⁻¹)` on a ladder against the
/// continuous-profile prediction `ψ(t^{−1/α})`, for increasing `ψ ≥ 0`.
pub fn mu_against_profile<F>(ladder: &GrowthLadder, m: usize, psi: F, t: f64) -> Result<MuComparison>
where
    F: Fn(f64) -> f64,
{
    if !(t > 0.0 && t < m as f64) {
        return Err(Error::Hypothesis(format!("t = {t} outside the ladder support (0, {m})")));
    }
    if psi(0.0) < 0.0 {
        return Err(Error::Hypothesis("ψ must be non-negative on [0, ∞)".into()));
    }
    let model = ladder.model(m)?;
    let image = model.apply(|lambda| psi(1.0 / lambda))?;
    let mu = image.singular_value_function();
    Ok(MuComparison {
        t,
        computed: mu.eval(t)?,
        left_limit: mu.eval_left(t)?,
        predicted: psi(t.powf(-1.0 / ladder.alpha)),
    })
}

/// `μ(t, 𝓓^{−β})` left limits at the integer breakpoints `t = 1..m` against
/// `t^{−β/α}`; returns the largest relative deviation.
pub fn breakpoint_deviation(ladder: &GrowthLadder, m: usize, beta: f64) -> Result<f64> {
    let mu = ladder.model(m)?.power(-beta)?.singular_value_function();
    let mut worst: f64 = 0.0;
    for i in 1..=m {
        let t = i as f64;
        let predicted = t.powf(-beta / ladder.alpha);
        worst = worst.max((mu.eval_left(t)? - predicted).abs() / predicted);
    }
    Ok(worst)
}

/// Mean relative error of `μ(t, 𝓓^{−β})` against `t^{−β/α}` over a fixed set
/// of off-breakpoint sample points in `(0, m)`.
pub fn off_breakpoint_error(ladder: &GrowthLadder, m: usize, beta: f64) -> Result<f64> {
    const OFFSETS: [f64; 3] = [0.414_213_562_373_095_1, 0.618_033_988_749_894_8, 0.141_592_653_589_793_2];
    let mu = ladder.model(m)?.power(-beta)?.singular_value_function();
    let mut total = 0.0;
    let mut count = 0;
    for i in 0..m.saturating_sub(1) {
        for off in OFFSETS {
            let t = i as f64 + off;
            let predicted = t.powf(-beta / ladder.alpha);
            total += (mu.eval(t)? - predicted).abs() / predicted;
            count += 1;
        }
    }
    Ok(total / count as f64)
}

fn check_decreasing_profile<F: Fn(f64) -> f64>(phi: &F, samples: &[f64]) -> Result<()> {
    if (phi(0.0) - 1.0).abs() > 1e-12 {
        return Err(Error::Profile(format!("profile must start at 1, got φ(0) = {}", phi(0.0))));
    }
    let mut pts: Vec<f64> = samples.iter().copied().filter(|t| *t >= 0.0).collect();
    pts.push(0.0);
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    for w in pts.windows(2) {
        if phi(w[1]) > phi(w[0]) {
            return Err(Error::Profile(format!("profile increases between {} and {}", w[0], w[1])));
        }
    }
    Ok(())
}

fn profile_samples(model: &SpectralModel) -> Vec<f64> {
    let top = model.ladder().last().map(|p| p.0).unwrap_or(1.0).max(1.0);
    let mut s: Vec<f64> = model.ladder().iter().map(|p| p.0).collect();
    s.extend((0..=64).map(|i| 2.0 * top * i as f64 / 64.0));
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeakNormSides {
    /// `‖φ(|𝓛|)‖_{L^{r,∞}}` from the singular value function.
    pub lhs: f64,
    /// `sup_{u>0} τ(E_{(0,u)}(|𝓛|))^{1/r} φ(u)` from the counting function.
    pub rhs: f64,
}

impl WeakNormSides {
    pub fn relative_gap(&self) -> f64 {
        (self.lhs - self.rhs).abs() / self.rhs
    }
}

/// Weak `L^r` norm of `φ(|𝓛|)` computed two ways, for a continuous
/// decreasing `φ` with `φ(0) = 1`.
pub fn weak_norm_identity<F>(l: &SpectralModel, phi: F, r: f64) -> Result<WeakNormSides>
where
    F: Fn(f64) -> f64,
{
    if !(r >= 1.0 && r.is_finite()) {
        return Err(Error::InvalidExponent(format!("r = {r} must lie in [1, ∞)")));
    }
    check_decreasing_profile(&phi, &profile_samples(l))?;
    let lhs = l.apply(&phi)?.lorentz_norm(r, f64::INFINITY)?;
    // the sup over u ∈ (λ_i, λ_{i+1}] is approached as u ↓ λ_i
    let rhs = l.counting().steps().map(|(lambda, w)| w.powf(1.0 / r) * phi(lambda)).fold(0.0, f64::max);
    Ok(WeakNormSides { lhs, rhs })
}

/// Decreasing profiles with `φ(0) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Profile {
    /// `e^{−u}`
    Exp,
    /// `1/(1+u)`
    Inverse,
    /// `(1+u)^{−2}`
    InverseSquare,
}

impl Profile {
    pub const ALL: [Profile; 3] = [Profile::Exp, Profile::Inverse, Profile::InverseSquare];

    pub fn eval(self, u: f64) -> f64 {
        match self {
            Profile::Exp => (-u).exp(),
            Profile::Inverse => 1.0 / (1.0 + u),
            Profile::InverseSquare => (1.0 + u).powi(-2),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Profile::Exp => "exp",
            Profile::Inverse => "inverse",
            Profile::InverseSquare => "inverse-square",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Profile::ALL
            .into_iter()
            .find(|p| p.name() == text)
            .ok_or_else(|| Error::Config(format!("unknown profile '{text}' (exp, inverse, inverse-square)")))
    }
}

/// Diagonal model of random dimension in `1..=max_dim`, eigenvalues in
/// `(0.05, 20)` and weights in `(0.05, 2)`.
pub fn random_spectrum<R: Rng + ?Sized>(rng: &mut R, max_dim: usize) -> Result<SpectralModel> {
    let n = rng.random_range(1..=max_dim.max(1));
    let eig: Vec<f64> = (0..n).map(|_| rng.random_range(0.05..20.0)).collect();
    let w: Vec<f64> = (0..n).map(|_| rng.random_range(0.05..2.0)).collect();
    SpectralModel::diagonal(&eig, &w)
}

/// `max_i φ(λ_i) τ(E_{(0,λ_i]})^{1/p − 1/q}` over the positive eigenvalues.
/// No exponent check; see [`counting_bound`].
pub fn counting_bound_unchecked<F>(l: &SpectralModel, phi: F, p: f64, q: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    let e = 1.0 / p - 1.0 / q;
    l.counting().steps().map(|(lambda, w)| phi(lambda) * w.powf(e)).fold(0.0, f64::max)
}

/// Counting-function bound on `‖φ(|𝓛|)‖_{L^p → L^q}` for `1 < p ≤ 2 ≤ q < ∞`.
pub fn counting_bound<F>(l: &SpectralModel, phi: F, p: f64, q: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(p > 1.0 && p <= 2.0 && q >= 2.0 && q.is_finite()) {
        return Err(Error::InvalidExponent(format!("needs 1 < p ≤ 2 ≤ q < ∞, got p = {p}, q = {q}")));
    }
    Ok(counting_bound_unchecked(l, phi, p, q))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Finiteness {
    Bounded,
    Divergent,
    Boundary,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FinitenessTrend {
    pub alpha: f64,
    pub beta: f64,
    pub r: f64,
    pub dims: Vec<usize>,
    /// `‖𝓓_m^{−β}‖_{L^{r,∞}}` per dimension.
    pub norms: Vec<f64>,
    /// Relative increase over the last doubling of the dimension.
    pub last_increase: f64,
    pub observed: Finiteness,
    /// From the sign of `β/α − 1/r`.
    pub expected: Finiteness,
}

impl FinitenessTrend {
    /// Boundary cases always agree; they are excluded from pass/fail.
    pub fn agrees(&self) -> bool {
        self.expected == Finiteness::Boundary || self.observed == self.expected
    }
}

pub const PLATEAU_TOL: f64 = 1e-3;

/// Weak-`L^r` norm of `𝓓^{−β}` along growing ladders, classified as bounded
/// when the last doubling raised it by less than [`PLATEAU_TOL`].
pub fn finiteness_scan(ladder: &GrowthLadder, beta: f64, r: f64, dims: &[usize]) -> Result<FinitenessTrend> {
    if dims.len() < 2 {
        return Err(Error::Hypothesis("need at least two dimensions".into()));
    }
    if dims.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Hypothesis("dimensions must increase".into()));
    }
    if !(beta > 0.0 && r >= 1.0) {
        return Err(Error::InvalidExponent(format!("needs β > 0 and r ≥ 1, got β = {beta}, r = {r}")));
    }
    let norms = dims
        .iter()
        .map(|&m| ladder.model(m)?.power(-beta)?.lorentz_norm(r, f64::INFINITY))
        .collect::<Result<Vec<f64>>>()?;
    let last = dims.len() - 1;
    let prev = (0..last).rev().find(|&i| 2 * dims[i] <= dims[last]).unwrap_or(last - 1);
    let last_increase = (norms[last] - norms[prev]) / norms[prev];
    let gap = beta / ladder.alpha - 1.0 / r;
    let expected = if gap.abs() < 1e-12 {
        Finiteness::Boundary
    } else if gap > 0.0 {
        Finiteness::Bounded
    } else {
        Finiteness::Divergent
    };
    let observed = if expected == Finiteness::Boundary {
        Finiteness::Boundary
    } else if last_increase < PLATEAU_TOL {
        Finiteness::Bounded
    } else {
        Finiteness::Divergent
    };
    Ok(FinitenessTrend {
        alpha: ladder.alpha,
        beta,
        r,
        dims: dims.to_vec(),
        norms,
        last_increase,
        observed,
        expected,
    })
}

/// Powers of two from `lo` to `hi` inclusive.
pub fn dyadic_dims(lo: usize, hi: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut m = lo.max(1).next_power_of_two();
    while m <= hi {
        out.push(m);
        m *= 2;
    }
    out
}

/// `(α, β, r)` for α ∈ {1, 2}, r ∈ {1, 2, 4} and β/α ∈ {0.1, 0.3, 0.7, 1.3}:
/// twelve bounded and twelve divergent cases.
pub fn finiteness_grid() -> Vec<(f64, f64, f64)> {
    let mut out = Vec::new();
    for alpha in [1.0, 2.0] {
        for r in [1.0, 2.0, 4.0] {
            for ratio in [0.1, 0.3, 0.7, 1.3] {
                out.push((alpha, ratio * alpha, r));
            }
        }
    }
    out
}

/// Cases with `β/α = 1/r` exactly.
pub fn finiteness_boundary_cases() -> Vec<(f64, f64, f64)> {
    vec![(1.0, 0.5, 2.0), (2.0, 1.0, 2.0), (1.0, 1.0, 1.0)]
}

/// Smallest `β` on a fixed grid with `1/r < β/α`.
pub fn default_heat_beta(alpha: f64, r: f64) -> Result<f64> {
    const GRID: [f64; 8] = [0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 2.0, 3.0];
    GRID.into_iter()
        .find(|b| 1.0 / r < b / alpha)
        .ok_or_else(|| Error::Hypothesis(format!("no β on the grid makes the weak norm finite for r = {r}")))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayRow {
    pub t: f64,
    /// `‖u(t)‖_{L^p}`.
    pub exact_norm: f64,
    /// `‖e^{−t𝓛}‖_{L^p → L^q}` (exact where available, else a certified
    /// lower bound).
    pub exact_cross: f64,
    /// `‖𝓓^{−β}‖_{L^{r,∞}}^{1/r} ‖𝓓^β e^{−t𝓛}‖_{L^{r,q}} ‖u₀‖_p`.
    #[serde(rename = "bound_appl52")]
    pub bound_multiplier: f64,
    /// `max_i e^{−tλ_i} τ(E_{(0,λ_i]})^{1/p−1/q}`.
    #[serde(rename = "bound_cor62")]
    pub bound_counting: f64,
    /// `exact_cross / bound_counting`.
    pub ratio: f64,
    /// `‖u′(t) + 𝓛u(t)‖₂ / ‖𝓛u(t)‖₂` with a centred difference for `u′`.
    pub ode_residual: f64,
    /// `‖u(t) − e^{−t𝓛/2}e^{−t𝓛/2}u₀‖₂ / ‖u(t)‖₂`.
    pub semigroup_defect: f64,
    pub l2_norm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayTable {
    pub instance: String,
    pub p: f64,
    pub q: f64,
    pub beta: f64,
    pub r: f64,
    pub rows: Vec<DecayRow>,
}

impl DecayTable {
    pub const CSV_HEADER: &'static str =
        "t,exact_norm,exact_cross,bound_appl52,bound_cor62,ratio,ode_residual,semigroup_defect";

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let cells = [
                r.t,
                r.exact_norm,
                r.exact_cross,
                r.bound_multiplier,
                r.bound_counting,
                r.ratio,
                r.ode_residual,
                r.semigroup_defect,
            ];
            let line: Vec<String> = cells.iter().map(|v| format_real(*v)).collect();
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }

    /// Rows where the cross norm exceeds the counting bound.
    pub fn counting_bound_violations(&self) -> Vec<f64> {
        self.rows.iter().filter(|r| r.exact_cross > r.bound_counting * (1.0 + 1e-9)).map(|r| r.t).collect()
    }

    pub fn l2_monotone(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].t < w[0].t || w[1].l2_norm <= w[0].l2_norm * (1.0 + 1e-12))
    }
}

/// The heat propagator `e^{−t𝓛}` as a multiplier.
pub fn heat_propagator(f: &FourierStructure, l: &SpectralModel, t: f64) -> Result<MultiplierOp> {
    if !(t >= 0.0) {
        return Err(Error::Hypothesis(format!("time {t} must be non-negative")));
    }
    MultiplierOp::new(f.clone(), l.apply(|lambda| (-t * lambda).exp())?)
}

fn cross_norm(f: &FourierStructure, prop: &MultiplierOp, p: f64, q: f64, seed: u64) -> Result<f64> {
    let kernel = prop.kernel()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if p == 1.0 && q.is_infinite() {
        exact_norm_1_to_inf(f.source(), &kernel)
    } else if p == q {
        Ok(operator_pnorm_bracket(f.source(), &kernel, p, &mut rng)?.lower)
    } else {
        operator_norm_lower(f.source(), &kernel, p, q, &mut rng)
    }
}

pub const ODE_STEP: f64 = 1e-4;

/// Evolves `u₀` under `∂_t u + 𝓛u = 0` and tabulates norms and bounds on
/// `t_grid`. `d` and `beta` enter only the multiplier-style bound.
#[allow(clippy::too_many_arguments)]
pub fn heat_decay(
    f: &FourierStructure,
    l: &SpectralModel,
    u0: &AlgElement,
    p: f64,
    q: f64,
    t_grid: &[f64],
    d: &SpectralModel,
    beta: f64,
) -> Result<DecayTable> {
    if l.element().algebra().as_ref() != f.dual().as_ref() || d.element().algebra().as_ref() != f.dual().as_ref() {
        return Err(Error::ShapeMismatch("generator and reference must live on the dual algebra".into()));
    }
    if let Some(t) = t_grid.iter().find(|t| !(**t >= 0.0)) {
        return Err(Error::Hypothesis(format!("time {t} must be non-negative")));
    }
    if !(p >= 1.0 && q >= 1.0) {
        return Err(Error::InvalidExponent(format!("needs p, q ≥ 1, got p = {p}, q = {q}")));
    }
    let r = multiplier_r(p);
    let weak = d.power(-beta)?.lorentz_norm(r, f64::INFINITY)?.powf(1.0 / r);
    let d_beta = d.power(beta)?;
    let u0_norm = u0.lp_norm(p)?;
    let generator = MultiplierOp::new(f.clone(), l.element().clone())?;
    let evolve = |t: f64| -> Result<AlgElement> { heat_propagator(f, l, t)?.apply(u0) };

    let mut rows = Vec::with_capacity(t_grid.len());
    for (i, &t) in t_grid.iter().enumerate() {
        let prop = heat_propagator(f, l, t)?;
        let u = prop.apply(u0)?;
        let exact_cross = cross_norm(f, &prop, p, q, i as u64)?;
        let symbol = d_beta.mul(prop.symbol())?.lorentz_norm(r, q)?;
        let bound_multiplier = weak * symbol * u0_norm;
        let bound_counting = counting_bound_unchecked(l, |lambda| (-t * lambda).exp(), p, q);

        let derivative = if t >= ODE_STEP {
            evolve(t + ODE_STEP)?.sub(&evolve(t - ODE_STEP)?)?.scale_real(0.5 / ODE_STEP)
        } else {
            let (a, b) = (evolve(t + ODE_STEP)?, evolve(t + 2.0 * ODE_STEP)?);
            a.scale_real(4.0).sub(&u.scale_real(3.0))?.sub(&b)?.scale_real(0.5 / ODE_STEP)
        };
        let lu = generator.apply(&u)?;
        let lu_norm = lu.lp_norm(2.0)?;
        let residual_abs = derivative.add(&lu)?.lp_norm(2.0)?;
        let ode_residual = if lu_norm > 0.0 { residual_abs / lu_norm } else { residual_abs };

        let half = heat_propagator(f, l, t / 2.0)?;
        let composed = half.apply(&half.apply(u0)?)?;
        let l2_norm = u.lp_norm(2.0)?;
        let semigroup_defect = composed.sub(&u)?.lp_norm(2.0)? / l2_norm.max(f64::MIN_POSITIVE);

        rows.push(DecayRow {
            t,
            exact_norm: u.lp_norm(p)?,
            exact_cross,
            bound_multiplier,
            bound_counting,
            ratio: crate::inequality::safe_ratio(exact_cross, bound_counting),
            ode_residual,
            semigroup_defect,
            l2_norm,
        });
    }
    Ok(DecayTable { instance: f.descriptor().to_string(), p, q, beta, r, rows })
}

/// `‖e^{−(t₁+t₂)𝓛}u₀ − e^{−t₁𝓛}e^{−t₂𝓛}u₀‖₂ / ‖e^{−(t₁+t₂)𝓛}u₀‖₂`.
pub fn semigroup_defect(f: &FourierStructure, l: &SpectralModel, u0: &AlgElement, t1: f64, t2: f64) -> Result<f64> {
    let joint = heat_propagator(f, l, t1 + t2)?.apply(u0)?;
    let split = heat_propagator(f, l, t1)?.apply(&heat_propagator(f, l, t2)?.apply(u0)?)?;
    Ok(split.sub(&joint)?.lp_norm(2.0)? / joint.lp_norm(2.0)?.max(f64::MIN_POSITIVE))
}

/// `n` log-uniform times from `lo` to `hi`.
pub fn log_times(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let step = (hi / lo).ln() / (n - 1) as f64;
    (0..n).map(|i| if i == n - 1 { hi } else { lo * (step * i as f64).exp() }).collect()
}

/// `δ` at the identity of a commutative source.
pub fn point_mass(f: &FourierStructure) -> Result<AlgElement> {
    let mut v = vec![0.0; f.source().dim()];
    v[0] = 1.0;
    AlgElement::from_real_values(Arc::clone(f.source()), &v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::make_cyclic;
    use crate::vn_model::C64;

    #[test]
    fn ladder_counting_hits_integers() {
        let ladder = GrowthLadder::new(2.0).unwrap();
        let model = ladder.model(50).unwrap();
        for i in 1..50usize {
            let lambda = (i as f64).sqrt();
            assert_eq!(model.counting().eval(lambda + 1e-9), i as f64);
        }
        let c = model.counting().eval(49.0f64.sqrt() + 1e-9);
        assert!((c / 49.0f64.sqrt().powf(2.0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn flooring_gap_and_refinement() {
        let id = |u: f64| u;
        let coarse = mu_against_profile(&GrowthLadder::new(1.0).unwrap(), 8, id, 2.0).unwrap();
        assert!((coarse.computed - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(coarse.predicted, 0.5);
        assert!((coarse.left_limit - 0.5).abs() < 1e-15);
        // weight 1/2 at half-integers: μ(2) = 1/(5/2)
        let fine = mu_against_profile(&GrowthLadder::new(1.0).unwrap().refined(2).unwrap(), 8, id, 2.0).unwrap();
        assert!((fine.computed - 0.4).abs() < 1e-15);
        assert!(fine.predicted - fine.computed < coarse.predicted - coarse.computed);
        assert!(mu_against_profile(&GrowthLadder::new(1.0).unwrap(), 8, id, 8.0).is_err());
    }

    #[test]
    fn constant_psi_is_exact() {
        let r = mu_against_profile(&GrowthLadder::new(1.5).unwrap(), 20, |_| 2.5, 7.3).unwrap();
        assert_eq!((r.computed, r.predicted), (2.5, 2.5));
    }

    #[test]
    fn breakpoints_and_refinement_trend() {
        for alpha in [0.5, 1.0, 2.0] {
            let ladder = GrowthLadder::new(alpha).unwrap();
            assert!(breakpoint_deviation(&ladder, 64, 1.0).unwrap() < 1e-13);
            let errs: Vec<f64> = [1, 4, 16, 64]
                .iter()
                .map(|&k| off_breakpoint_error(&ladder.refined(k).unwrap(), 32, 1.0).unwrap())
                .collect();
            assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
        }
    }

    #[test]
    fn weak_norm_two_point_example() {
        let l = SpectralModel::diagonal(&[1.0, 2.0], &[1.0, 1.0]).unwrap();
        let r = weak_norm_identity(&l, |u| (-u).exp(), 1.0).unwrap();
        let expected = (-1.0f64).exp().max(2.0 * (-2.0f64).exp());
        assert!((r.lhs - expected).abs() < 1e-15);
        assert!((r.rhs - expected).abs() < 1e-15);
    }

    #[test]
    fn weak_norm_single_point() {
        let l = SpectralModel::diagonal(&[3.0], &[0.7]).unwrap();
        let phi = |u: f64| 1.0 / (1.0 + u);
        for r in [1.0, 2.0, 4.0] {
            let res = weak_norm_identity(&l, phi, r).unwrap();
            let expected = 0.7f64.powf(1.0 / r) * 0.25;
            assert!((res.lhs - expected).abs() < 1e-15 && (res.rhs - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn weak_norm_random_spectra() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let l = random_spectrum(&mut rng, 64).unwrap();
            for phi in Profile::ALL {
                let res = weak_norm_identity(&l, |u| phi.eval(u), 2.0).unwrap();
                assert!(res.relative_gap() < 1e-12, "{phi:?} {res:?}");
            }
        }
        assert_eq!(Profile::parse("inverse-square").unwrap(), Profile::InverseSquare);
        assert!(Profile::parse("gauss").is_err());
    }

    #[test]
    fn weak_norm_rejects_bad_profiles() {
        let l = SpectralModel::diagonal(&[1.0, 2.0], &[1.0, 1.0]).unwrap();
        assert!(weak_norm_identity(&l, |u| (u - 1.0).powi(2).min(1.0), 1.0).is_err());
        assert!(weak_norm_identity(&l, |u| 2.0 * (-u).exp(), 1.0).is_err());
    }

    #[test]
    fn cross_bound_closed_forms() {
        let l = SpectralModel::diagonal(&[0.5, 1.0, 3.0], &[1.0, 2.0, 1.0]).unwrap();
        let phi = |u: f64| (-u).exp();
        assert!((counting_bound(&l, phi, 2.0, 2.0).unwrap() - (-0.5f64).exp()).abs() < 1e-15);
        let single = SpectralModel::diagonal(&[2.0], &[0.3]).unwrap();
        let b = counting_bound(&single, phi, 1.5, 3.0).unwrap();
        assert!((b - (-2.0f64).exp() * 0.3f64.powf(1.0 / 1.5 - 1.0 / 3.0)).abs() < 1e-15);
        assert!(counting_bound(&l, phi, 1.0, 3.0).is_err());
        assert!(counting_bound(&l, phi, 1.5, f64::INFINITY).is_err());
    }

    #[test]
    fn cross_bound_maximizer_on_linear_ladder() {
        // counting(λ_i) = i on the α = 1 ladder; the continuous maximizer of
        // e^{−ti} i^e sits at i* = e/t
        let l = GrowthLadder::new(1.0).unwrap().model(400).unwrap();
        let (p, q, t) = (1.25, 4.0, 0.05);
        let e = 1.0 / p - 1.0 / q;
        let brute = (1..=400).map(|i| (-t * i as f64).exp() * (i as f64).powf(e)).fold(0.0, f64::max);
        let b = counting_bound(&l, |u| (-t * u).exp(), p, q).unwrap();
        assert!((b - brute).abs() < 1e-14);
        let star = e / t;
        let near = [star.floor(), star.ceil()]
            .iter()
            .map(|&i| (-t * i).exp() * i.powf(e))
            .fold(0.0, f64::max);
        assert!((b - near).abs() < 1e-14);
    }

    #[test]
    fn finiteness_examples() {
        let dims = dyadic_dims(16, 4096);
        assert_eq!(dims.len(), 9);
        let bounded = finiteness_scan(&GrowthLadder::new(1.0).unwrap(), 1.0, 2.0, &dims).unwrap();
        assert_eq!(bounded.observed, Finiteness::Bounded);
        let divergent = finiteness_scan(&GrowthLadder::new(2.0).unwrap(), 0.4, 2.0, &dims).unwrap();
        assert_eq!(divergent.observed, Finiteness::Divergent);
        let edge = finiteness_scan(&GrowthLadder::new(1.0).unwrap(), 0.5, 2.0, &dims).unwrap();
        assert_eq!(edge.expected, Finiteness::Boundary);
        assert!(finiteness_scan(&GrowthLadder::new(1.0).unwrap(), 1.0, 2.0, &[]).is_err());
    }

    #[test]
    fn heat_basics_on_small_cycle() {
        let f = make_cyclic(16).unwrap();
        let l = SpectralModel::new(f.laplacian_symbol().unwrap()).unwrap();
        let d = f.default_reference().unwrap();
        let u0 = point_mass(&f).unwrap();
        let table = heat_decay(&f, &l, &u0, 1.0, f64::INFINITY, &[0.0, 0.5, 2.0], &d, 1.25).unwrap();
        let first = &table.rows[0];
        assert_eq!(first.exact_norm, 1.0);
        assert!(table.rows.iter().all(|r| r.ode_residual < 1e-6 && r.semigroup_defect < 1e-10));
        assert!(table.l2_monotone());
        assert!(heat_decay(&f, &l, &u0, 1.0, f64::INFINITY, &[-1.0], &d, 1.25).is_err());
    }

    #[test]
    fn single_frequency_decays_exponentially() {
        let n = 12;
        let f = make_cyclic(n).unwrap();
        let l = SpectralModel::new(f.laplacian_symbol().unwrap()).unwrap();
        let k = 2;
        let vals: Vec<C64> = (0..n)
            .map(|g| {
                let a = 2.0 * std::f64::consts::PI * (g * k) as f64 / n as f64;
                C64::new(a.cos(), a.sin())
            })
            .collect();
        let u0 = AlgElement::from_values(f.source().clone(), &vals).unwrap();
        let lambda = 4.0 * (std::f64::consts::PI * k as f64 / n as f64).sin().powi(2);
        for t in [0.1, 1.0, 3.0] {
            let u = heat_propagator(&f, &l, t).unwrap().apply(&u0).unwrap();
            let expected = (-t * lambda).exp() * u0.lp_norm(2.0).unwrap();
            assert!((u.lp_norm(2.0).unwrap() - expected).abs() < 1e-12 * expected);
        }
        assert!(semigroup_defect(&f, &l, &u0, 0.3, 1.1).unwrap() < 1e-12);
    }

    #[test]
    fn default_beta_grid() {
        assert_eq!(default_heat_beta(1.0, 1.0).unwrap(), 1.25);
        assert_eq!(default_heat_beta(1.0, 2.0).unwrap(), 0.75);
        assert_eq!(default_heat_beta(2.0, 4.0).unwrap(), 0.75);
    }
}
