use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::report::{
    conjugate, hardy_littlewood_r, multiplier_r, validate_exponents, weighted_gamma, Exponents, InequalityKind,
    InequalityReport,
};
use crate::error::{Error, Result};
use crate::fourier::{Descriptor, FourierStructure, MultiplierOp};
use crate::rearrangement::{integrate_power_product, StepFunction};
use crate::vn_model::{operator_pnorm_bracket, AlgElement, SpectralModel};

fn same_algebra(x: &AlgElement, other: &AlgElement, what: &str) -> Result<()> {
    if x.algebra() != other.algebra() && x.algebra().as_ref() != other.algebra().as_ref() {
        return Err(Error::ShapeMismatch(format!("{what} lives on a different algebra")));
    }
    Ok(())
}

fn on_dual(f: &FourierStructure, d: &SpectralModel) -> Result<()> {
    if d.element().algebra().as_ref() != f.dual().as_ref() {
        return Err(Error::ShapeMismatch("reference operator must live on the dual algebra".into()));
    }
    Ok(())
}

/// `‖𝓓^{−β}‖_{L^{r,∞}}^{1/r}`.
fn reference_factor(d: &SpectralModel, beta: f64, r: f64) -> Result<f64> {
    if !(beta > 0.0) {
        return Err(Error::InvalidExponent(format!("β = {beta} must be positive")));
    }
    if !d.is_invertible() {
        return Err(Error::NotInvertible);
    }
    Ok(d.power(-beta)?.lorentz_norm(r, f64::INFINITY)?.powf(1.0 / r))
}

fn finite_paley_constant(phi: &StepFunction) -> Result<f64> {
    let m = phi.paley_constant();
    if m.is_finite() {
        Ok(m)
    } else {
        Err(Error::InfinitePaleyConstant)
    }
}

/// `‖𝓕x‖_{L^{p'}} ≤ ‖x‖_{L^p}` for `1 ≤ p ≤ 2`.
pub fn check_hausdorff_young(f: &FourierStructure, x: &AlgElement, p: f64) -> Result<InequalityReport> {
    validate_exponents(InequalityKind::HausdorffYoung, p, None)?;
    let fx = f.forward(x)?;
    let lhs = fx.lp_norm(conjugate(p))?;
    let rhs = x.lp_norm(p)?;
    Ok(InequalityReport::new(InequalityKind::HausdorffYoung, Exponents::with_p(p), lhs, rhs, f.descriptor().to_string()))
}

/// `‖𝓕x‖_{L^{p',p}} ≲ ‖x‖_{L^p}` for `1 < p ≤ 2`.
pub fn check_hy_lorentz(f: &FourierStructure, x: &AlgElement, p: f64) -> Result<InequalityReport> {
    validate_exponents(InequalityKind::HausdorffYoungLorentz, p, None)?;
    let fx = f.forward(x)?;
    let lhs = fx.lorentz_norm(conjugate(p), p)?;
    let rhs = x.lp_norm(p)?;
    let mut params = Exponents::with_p(p);
    params.q = Some(p);
    Ok(InequalityReport::new(InequalityKind::HausdorffYoungLorentz, params, lhs, rhs, f.descriptor().to_string()))
}

/// `(∫ μ(t,𝓕x)^p φ(t)^{2−p} dt)^{1/p} ≲ M_φ^{(2−p)/p} ‖x‖_p`.
pub fn check_paley(f: &FourierStructure, x: &AlgElement, p: f64, phi: &StepFunction) -> Result<InequalityReport> {
    validate_exponents(InequalityKind::Paley, p, None)?;
    let m_phi = finite_paley_constant(phi)?;
    let mu = f.forward(x)?.singular_value_function();
    let lhs = integrate_power_product(&[(&mu, p), (phi, 2.0 - p)]).powf(1.0 / p);
    let rhs = m_phi.powf((2.0 - p) / p) * x.lp_norm(p)?;
    Ok(InequalityReport::new(InequalityKind::Paley, Exponents::with_p(p), lhs, rhs, f.descriptor().to_string())
        .factor("paley_constant", m_phi))
}

/// `(∫ (μ(t,𝓕x) φ(t)^{1/q−1/p'})^q dt)^{1/q} ≲ M_φ^{1/q−1/p'} ‖x‖_p` for
/// `1 < p ≤ q ≤ p' < ∞`. Interpolates between the Paley form (`q = p`) and
/// Hausdorff–Young (`q = p'`).
pub fn check_hyp(f: &FourierStructure, x: &AlgElement, p: f64, q: f64, phi: &StepFunction) -> Result<InequalityReport> {
    validate_exponents(InequalityKind::HausdorffYoungPaley, p, Some(q))?;
    let m_phi = finite_paley_constant(phi)?;
    let e = 1.0 / q - 1.0 / conjugate(p);
    let mu = f.forward(x)?.singular_value_function();
    let lhs = integrate_power_product(&[(&mu, q), (phi, q * e)]).powf(1.0 / q);
    let rhs = m_phi.powf(e) * x.lp_norm(p)?;
    let mut params = Exponents::with_p(p);
    params.q = Some(q);
    Ok(InequalityReport::new(InequalityKind::HausdorffYoungPaley, params, lhs, rhs, f.descriptor().to_string())
        .factor("paley_constant", m_phi))
}

/// `‖𝓓^{−β}𝓕x‖_{L^p} ≲ ‖𝓓^{−β}‖_{L^{r,∞}}^{1/r} ‖x‖_p`, `1/r = (2−p)/p`.
/// The left side uses the module identity `𝓕(𝓓^{−β}x) = 𝓓^{−β}𝓕(x)`.
pub fn check_hardy_littlewood(
    f: &FourierStructure,
    x: &AlgElement,
    p: f64,
    d: &SpectralModel,
    beta: f64,
) -> Result<InequalityReport> {
    validate_exponents(InequalityKind::HardyLittlewood, p, None)?;
    on_dual(f, d)?;
    let r = hardy_littlewood_r(p);
    let weak = reference_factor(d, beta, r)?;
    let lhs = d.power(-beta)?.mul(&f.forward(x)?)?.lp_norm(p)?;
    let rhs = weak * x.lp_norm(p)?;
    let mut params = Exponents::with_p(p);
    params.r = Some(r);
    params.beta = Some(beta);
    Ok(InequalityReport::new(InequalityKind::HardyLittlewood, params, lhs, rhs, f.descriptor().to_string())
        .factor("reference_weak_norm_pow", weak))
}

/// `‖x‖_{L^p} ≲ ‖𝓓^{−β}‖_{L^{r,∞}}^{1/r} ‖𝓓^β 𝓕x‖_{L^p}`, `1/r = (2−p)/p`.
/// Run it on a swapped structure for the statement with the roles of the
/// two algebras exchanged.
pub fn check_dual_hlp(
    f: &FourierStructure,
    x: &AlgElement,
    p: f64,
    d: &SpectralModel,
    beta: f64,
) -> Result<InequalityReport> {
    validate_exponents(InequalityKind::DualHardyLittlewood, p, None)?;
    on_dual(f, d)?;
    let r = hardy_littlewood_r(p);
    let weak = reference_factor(d, beta, r)?;
    let lhs = x.lp_norm(p)?;
    let rhs = weak * d.power(beta)?.mul(&f.forward(x)?)?.lp_norm(p)?;
    let mut params = Exponents::with_p(p);
    params.r = Some(r);
    params.beta = Some(beta);
    Ok(InequalityReport::new(InequalityKind::DualHardyLittlewood, params, lhs, rhs, f.descriptor().to_string())
        .factor("reference_weak_norm_pow", weak))
}

fn bracket_lhs(a: &MultiplierOp, p: f64, seed: u64) -> Result<(f64, f64)> {
    let kernel = a.kernel()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = operator_pnorm_bracket(a.structure().source(), &kernel, p, &mut rng)?;
    Ok((b.lower, b.upper))
}

/// `‖A‖_{p→p} ≲ ‖𝓓^{−β}‖_{L^{r,∞}}^{1/r} ‖𝓓^β A Ψ‖_{L^{r,q}} ‖Ψ⁻¹‖_op` with
/// `1/r = 2|1/p − 1/2|`.
///
/// `lhs` is the certified lower end of the operator-norm bracket, so
/// `exceeds_unit` can only be raised by a genuine counterexample.
#[allow(clippy::too_many_arguments)]
pub fn lorentz_symbol_bound(
    a: &MultiplierOp,
    psi: &AlgElement,
    d: &SpectralModel,
    beta: f64,
    p: f64,
    q: f64,
    seed: u64,
) -> Result<InequalityReport> {
    validate_exponents(InequalityKind::MultiplierLorentz, p, Some(q))?;
    let f = a.structure();
    on_dual(f, d)?;
    same_algebra(psi, a.symbol(), "Ψ")?;
    let psi_inverse_op = psi.hermitian_inverse()?.op_norm();
    let r = multiplier_r(p);
    let weak = reference_factor(d, beta, r)?;
    let symbol_norm = d.power(beta)?.mul(a.symbol())?.mul(psi)?.lorentz_norm(r, q)?;
    let rhs = weak * symbol_norm * psi_inverse_op;
    let (lower, upper) = bracket_lhs(a, p, seed)?;
    let mut params = Exponents::with_p(p);
    params.q = Some(q);
    params.r = Some(r);
    params.beta = Some(beta);
    let mut report = InequalityReport::new(InequalityKind::MultiplierLorentz, params, lower, rhs, f.descriptor().to_string())
        .factor("reference_weak_norm_pow", weak)
        .factor("symbol_lorentz_norm", symbol_norm)
        .factor("psi_inverse_op", psi_inverse_op);
    report.lhs_upper = Some(upper);
    Ok(report)
}

/// `‖A‖_{p→p} ≲ ‖φ‖_{L^{1,∞}}^{1/q−1/p} ‖𝓓^{−β}‖_{L^{r,∞}}^{1/r}
/// ‖φ^{1/p−1/q} μ(𝓓^β A)‖_{L^γ}` for `2 ≤ p < ∞`, `p' ≤ q ≤ p`,
/// `1/γ = 1/q' − 1/p > 0`.
#[allow(clippy::too_many_arguments)]
pub fn weighted_symbol_bound(
    a: &MultiplierOp,
    d: &SpectralModel,
    beta: f64,
    p: f64,
    q: f64,
    phi: &StepFunction,
    seed: u64,
) -> Result<InequalityReport> {
    validate_exponents(InequalityKind::MultiplierWeighted, p, Some(q))?;
    let f = a.structure();
    on_dual(f, d)?;
    let m_phi = finite_paley_constant(phi)?;
    let r = multiplier_r(p);
    let gamma = weighted_gamma(p, q);
    let weak = reference_factor(d, beta, r)?;
    let mu = d.power(beta)?.mul(a.symbol())?.singular_value_function();
    let weighted = integrate_power_product(&[(&mu, gamma), (phi, gamma * (1.0 / p - 1.0 / q))]).powf(1.0 / gamma);
    let phi_factor = m_phi.powf(1.0 / q - 1.0 / p);
    let rhs = phi_factor * weak * weighted;
    let (lower, upper) = bracket_lhs(a, p, seed)?;
    let mut params = Exponents::with_p(p);
    params.q = Some(q);
    params.r = Some(r);
    params.gamma = Some(gamma);
    params.beta = Some(beta);
    let mut report = InequalityReport::new(InequalityKind::MultiplierWeighted, params, lower, rhs, f.descriptor().to_string())
        .factor("phi_weak_norm_pow", phi_factor)
        .factor("reference_weak_norm_pow", weak)
        .factor("weighted_gamma_norm", weighted)
        .note("weak-norm exponent of φ taken as 1/q − 1/p; the alternative (1 − 1/q)/q is not used")
        .note("γ defined through 1/γ = 1/q' − 1/p");
    report.lhs_upper = Some(upper);
    Ok(report)
}

/// `‖A‖_{2→2}` computed from the kernel and `‖σ‖_op`; Plancherel makes
/// them equal.
pub fn multiplier_l2_norms(a: &MultiplierOp) -> Result<(f64, f64)> {
    let (lower, _) = bracket_lhs(a, 2.0, 0)?;
    Ok((lower, a.symbol().op_norm()))
}

#[derive(Debug, Clone, Serialize)]
pub struct DyadicReport {
    pub report: InequalityReport,
    /// `‖M_s E_j A Ψ‖` over the annuli `|k| ∈ (2^{j−1}, 2^{j+1})`.
    pub band_norms: Vec<f64>,
    /// Same over the widening windows `|k| ∈ (2^{−j−1}, 2^{j+1})`.
    pub window_norms: Vec<f64>,
    pub windows_monotone: bool,
    /// Widest window within 5% of the full norm.
    pub window_converged: bool,
}

/// Dyadic band decomposition on `ℤ_N`, `N` a power of two: compares
/// `sup_j ‖M_s E_j A Ψ‖_{L^{1/s,1}}` with `‖M_s A Ψ‖_{L^{1/s,1}}`, where
/// `M_s` multiplies by `(1 + |k|²)^{s/2}`.
pub fn dyadic_projection_identity(a: &MultiplierOp, psi: &AlgElement, s: f64) -> Result<DyadicReport> {
    validate_exponents(InequalityKind::Dyadic, s, None)?;
    let f = a.structure();
    let n = match f.descriptor() {
        Descriptor::Cyclic(n) => n,
        other => return Err(Error::Hypothesis(format!("dyadic bands need a cyclic instance, got {other}"))),
    };
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::Hypothesis(format!("dyadic bands need N a power of two ≥ 2, got {n}")));
    }
    same_algebra(psi, a.symbol(), "Ψ")?;
    let dual = f.dual().clone();
    let freq: Vec<f64> = (0..n).map(|k| k.min(n - k) as f64).collect();
    let weight: Vec<f64> = freq.iter().map(|k| (1.0 + k * k).powf(s / 2.0)).collect();
    let full_symbol = AlgElement::from_real_values(dual.clone(), &weight)?.mul(a.symbol())?.mul(psi)?;
    let lorentz = |mask: &dyn Fn(f64) -> bool| -> Result<f64> {
        let m: Vec<f64> = freq.iter().map(|&k| if mask(k) { 1.0 } else { 0.0 }).collect();
        AlgElement::from_real_values(dual.clone(), &m)?.mul(&full_symbol)?.lorentz_norm(1.0 / s, 1.0)
    };
    let full = full_symbol.lorentz_norm(1.0 / s, 1.0)?;
    let bands = n.trailing_zeros() as i32;
    let mut band_norms = Vec::new();
    let mut window_norms = Vec::new();
    for j in 0..=bands {
        let (lo, hi) = (2f64.powi(j - 1), 2f64.powi(j + 1));
        band_norms.push(lorentz(&|k| k > lo && k < hi)?);
        let lo_w = 2f64.powi(-j - 1);
        window_norms.push(lorentz(&|k| k > lo_w && k < hi)?);
    }
    let sup = band_norms.iter().copied().fold(0.0, f64::max);
    let windows_monotone = window_norms.windows(2).all(|w| w[1] >= w[0] * (1.0 - 1e-12));
    let last = *window_norms.last().unwrap();
    let window_converged = last >= 0.95 * full;
    let mut params = Exponents::with_p(1.0 / s);
    params.q = Some(1.0);
    params.s = Some(s);
    let report = InequalityReport::new(InequalityKind::Dyadic, params, sup, full, f.descriptor().to_string())
        .factor("widest_window_norm", last);
    Ok(DyadicReport { report, band_norms, window_norms, windows_monotone, window_converged })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SubmultiplicativityReport {
    pub checked: usize,
    pub violations: usize,
    /// Largest `μ(t+s, xy) − μ(t,x)μ(s,y)` seen (negative when none).
    pub worst_excess: f64,
}

/// `μ(t+s, xy) ≤ μ(t,x)μ(s,y)` at every pair of breakpoints of `μ(x)`,
/// `μ(y)` (including 0). Singular values carry rounding, so an excess
/// counts only above `1e−12 · ‖x‖‖y‖`; breakpoints are sums of trace
/// weights, so `t + s` within `1e−12 · τ(1)` of a breakpoint of `μ(xy)` is
/// moved onto it.
pub fn check_submultiplicativity(x: &AlgElement, y: &AlgElement) -> Result<SubmultiplicativityReport> {
    let xy = x.mul(y)?;
    let (mx, my, mxy) = (x.singular_value_function(), y.singular_value_function(), xy.singular_value_function());
    let slack = 1e-12 * x.op_norm() * y.op_norm();
    let eps = 1e-12 * x.algebra().total_trace();
    let snap = |u: f64| {
        let b = mxy.breakpoints();
        let i = b.partition_point(|&v| v < u);
        [i.checked_sub(1), Some(i)]
            .into_iter()
            .flatten()
            .filter_map(|j| b.get(j))
            .copied()
            .find(|v| (v - u).abs() <= eps)
            .unwrap_or(u)
    };
    let mut report = SubmultiplicativityReport { checked: 0, violations: 0, worst_excess: f64::NEG_INFINITY };
    for &t in mx.breakpoints() {
        for &s in my.breakpoints() {
            let excess = mxy.eval(snap(t + s))? - mx.eval(t)? * my.eval(s)?;
            report.checked += 1;
            report.worst_excess = report.worst_excess.max(excess);
            if excess > slack {
                report.violations += 1;
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::{make_cyclic, make_finite_group, make_trivial, FiniteGroup};
    use crate::rearrangement::{default_weight, StepFunction};
    use crate::vn_model::{VnAlgebra, C64};
    use rand::SeedableRng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    fn delta(f: &FourierStructure) -> AlgElement {
        let mut v = vec![0.0; f.source().dim()];
        v[0] = 1.0;
        AlgElement::from_real_values(f.source().clone(), &v).unwrap()
    }

    #[test]
    fn hausdorff_young_endpoints() {
        let mut g = rng(0);
        let f = make_finite_group(FiniteGroup::symmetric(3).unwrap()).unwrap();
        for _ in 0..20 {
            let x = f.random_source(&mut g);
            let r2 = check_hausdorff_young(&f, &x, 2.0).unwrap();
            assert!((r2.ratio - 1.0).abs() < 1e-12);
            let r1 = check_hausdorff_young(&f, &x, 1.0).unwrap();
            assert!(r1.ratio <= 1.0 && !r1.exceeds_unit);
        }
        assert!(check_hausdorff_young(&f, &f.random_source(&mut g), 2.5).is_err());
    }

    #[test]
    fn hausdorff_young_four_thirds_sweep() {
        let mut g = rng(1);
        let f = make_cyclic(16).unwrap();
        let worst = (0..500)
            .map(|_| check_hausdorff_young(&f, &f.random_source(&mut g), 4.0 / 3.0).unwrap().ratio)
            .fold(0.0, f64::max);
        assert!(worst <= 1.0 + 1e-9, "{worst}");
    }

    #[test]
    fn lorentz_form_on_delta() {
        // 𝓕δ₀ ≡ 1 with dual weight 1/N: ‖1‖_{p',p} = (p'/p)^{1/p} τ̂(1)^{1/p'}
        for n in [4, 16] {
            let f = make_cyclic(n).unwrap();
            for p in [1.25, 1.5, 2.0] {
                let r = check_hy_lorentz(&f, &delta(&f), p).unwrap();
                let pd = conjugate(p);
                assert!((r.lhs - (pd / p).powf(1.0 / p)).abs() < 1e-12, "N={n} p={p}");
                assert_eq!(r.rhs, 1.0);
            }
        }
        let f = make_cyclic(8).unwrap();
        let x = f.random_source(&mut rng(2));
        assert!((check_hy_lorentz(&f, &x, 2.0).unwrap().ratio - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ratios_are_scale_invariant() {
        let f = make_cyclic(12).unwrap();
        let d = f.default_reference().unwrap();
        let phi = default_weight(12);
        let x = f.random_source(&mut rng(3));
        let cx = x.scale_real(7.5);
        let pairs = [
            (check_hy_lorentz(&f, &x, 1.5).unwrap(), check_hy_lorentz(&f, &cx, 1.5).unwrap()),
            (check_paley(&f, &x, 1.5, &phi).unwrap(), check_paley(&f, &cx, 1.5, &phi).unwrap()),
            (check_hyp(&f, &x, 1.5, 2.5, &phi).unwrap(), check_hyp(&f, &cx, 1.5, 2.5, &phi).unwrap()),
            (
                check_hardy_littlewood(&f, &x, 1.5, &d, 1.0).unwrap(),
                check_hardy_littlewood(&f, &cx, 1.5, &d, 1.0).unwrap(),
            ),
            (check_dual_hlp(&f, &x, 1.5, &d, 1.0).unwrap(), check_dual_hlp(&f, &cx, 1.5, &d, 1.0).unwrap()),
        ];
        for (a, b) in pairs {
            assert!((a.ratio - b.ratio).abs() <= 1e-10 * a.ratio, "{}", a.kind);
        }
    }

    #[test]
    fn paley_scales_with_weight_height() {
        let f = make_cyclic(8).unwrap();
        let x = f.random_source(&mut rng(4));
        let p = 1.5;
        let base = check_paley(&f, &x, p, &StepFunction::indicator(1.0, 0.5).unwrap()).unwrap();
        for c in [0.25, 3.0, 40.0] {
            let r = check_paley(&f, &x, p, &StepFunction::indicator(c, 0.5).unwrap()).unwrap();
            let scale = c.powf((2.0 - p) / p);
            assert!((r.lhs / base.lhs - scale).abs() < 1e-12 * scale);
            assert!((r.ratio - base.ratio).abs() < 1e-12);
        }
        let at_two = check_paley(&f, &x, 2.0, &default_weight(8)).unwrap();
        assert!((at_two.ratio - 1.0).abs() < 1e-12);
        let heavy = StepFunction::new(vec![0.0, 1.0], vec![2.0], 1.0).unwrap();
        assert!(matches!(check_paley(&f, &x, 1.5, &heavy), Err(Error::InfinitePaleyConstant)));
    }

    #[test]
    fn hyp_reduces_at_both_ends() {
        let f = make_finite_group(FiniteGroup::quaternion().unwrap()).unwrap();
        let phi = default_weight(8);
        let mut g = rng(5);
        for p in [1.2, 1.5, 1.8] {
            let x = f.random_source(&mut g);
            let hy = check_hausdorff_young(&f, &x, p).unwrap();
            let top = check_hyp(&f, &x, p, conjugate(p), &phi).unwrap();
            assert!((top.lhs - hy.lhs).abs() < 1e-10 * hy.lhs);
            let paley = check_paley(&f, &x, p, &phi).unwrap();
            let bottom = check_hyp(&f, &x, p, p, &phi).unwrap();
            assert!((bottom.lhs - paley.lhs).abs() < 1e-10 * paley.lhs);
        }
        assert!(check_hyp(&f, &f.random_source(&mut g), 1.5, 3.5, &phi).is_err());
    }

    #[test]
    fn hardy_littlewood_with_identity_reference() {
        let f = make_cyclic(10).unwrap();
        let d = SpectralModel::new(AlgElement::identity(f.dual().clone())).unwrap();
        let x = f.random_source(&mut rng(6));
        let r = check_hardy_littlewood(&f, &x, 1.5, &d, 2.0).unwrap();
        assert!((r.lhs - f.forward(&x).unwrap().lp_norm(1.5).unwrap()).abs() < 1e-12);
        // μ(𝟙) = 1 on [0, 1): weak norm 1
        assert!((r.factors["reference_weak_norm_pow"] - 1.0).abs() < 1e-12);
        assert!(r.ratio.is_finite());
        assert!(check_hardy_littlewood(&f, &x, 2.0, &d, 1.0).is_err());
        let singular = SpectralModel::new(AlgElement::zeros(f.dual().clone())).unwrap();
        assert!(matches!(check_hardy_littlewood(&f, &x, 1.5, &singular, 1.0), Err(Error::NotInvertible)));
    }

    #[test]
    fn dual_hlp_single_frequency() {
        let n = 16;
        let k0 = 3;
        let f = make_cyclic(n).unwrap();
        let d = f.default_reference().unwrap();
        let vals: Vec<C64> = (0..n)
            .map(|g| {
                let a = 2.0 * std::f64::consts::PI * (g * k0) as f64 / n as f64;
                C64::new(a.cos(), a.sin())
            })
            .collect();
        let x = AlgElement::from_values(f.source().clone(), &vals).unwrap();
        let p = 1.5;
        let r = check_dual_hlp(&f, &x, p, &d, 1.0).unwrap();
        // 𝓕x = N δ_{k0}: ‖𝓓𝓕x‖_p = N (1 + k0²)^{1/2} N^{−1/p}
        let dk = (1.0 + (k0 * k0) as f64).sqrt();
        let expected_rhs = r.factors["reference_weak_norm_pow"] * n as f64 * dk * (n as f64).powf(-1.0 / p);
        assert!((r.lhs - (n as f64).powf(1.0 / p)).abs() < 1e-10);
        assert!((r.rhs - expected_rhs).abs() < 1e-10 * expected_rhs);
    }

    #[test]
    fn dual_hlp_on_swapped_group() {
        let f = make_finite_group(FiniteGroup::symmetric(3).unwrap()).unwrap().swapped();
        let d = f.default_reference().unwrap();
        let mut g = rng(7);
        for _ in 0..10 {
            let r = check_dual_hlp(&f, &f.random_source(&mut g), 1.5, &d, 1.0).unwrap();
            assert!(r.ratio.is_finite() && r.ratio > 0.0);
        }
    }

    #[test]
    fn multiplier_51_identity_symbol() {
        let f = make_cyclic(16).unwrap();
        let d = f.default_reference().unwrap();
        let a = MultiplierOp::identity(f.clone());
        let psi = AlgElement::identity(f.dual().clone());
        for p in [1.25, 4.0] {
            for q in [1.0, f64::INFINITY] {
                let r = lorentz_symbol_bound(&a, &psi, &d, 1.0, p, q, 0).unwrap();
                assert!((r.lhs - 1.0).abs() < 1e-9, "{}", r.lhs);
                assert_eq!(r.factors["psi_inverse_op"], 1.0);
                // closed form on diagonal data
                let rr = multiplier_r(p);
                let weak = d.power(-1.0).unwrap().lorentz_norm(rr, f64::INFINITY).unwrap().powf(1.0 / rr);
                let sym = d.element().lorentz_norm(rr, q).unwrap();
                assert!((r.rhs - weak * sym).abs() < 1e-12 * r.rhs);
                assert!(!r.exceeds_unit);
            }
        }
        assert!(lorentz_symbol_bound(&a, &psi, &d, 1.0, 2.0, 1.0, 0).is_err());
    }

    #[test]
    fn multiplier_51_rank_one_symbol() {
        // σ = indicator of frequency k: the kernel is (1/N) e^{2πi(g−h)k/N}, a
        // rank-one operator with ‖A‖_{p→p} = ‖e_k‖_p ‖e_k‖_{p'} / N = 1
        let n = 8;
        let f = make_cyclic(n).unwrap();
        let d = f.default_reference().unwrap();
        let mut ind = vec![0.0; n];
        ind[3] = 1.0;
        let a = MultiplierOp::new(f.clone(), AlgElement::from_real_values(f.dual().clone(), &ind).unwrap()).unwrap();
        let psi = AlgElement::identity(f.dual().clone());
        let r = lorentz_symbol_bound(&a, &psi, &d, 1.0, 4.0, 1.0, 1).unwrap();
        assert!((r.lhs - 1.0).abs() < 1e-9);
        assert!((r.lhs_upper.unwrap() - 1.0).abs() < 1e-9);
        // 𝓓σ is (1+9)^{1/2} on one point of weight 1/8; L^{2,1} norm: v·(p/q)·T^{q/p}
        let sym = 10f64.sqrt() * 2.0 * (1.0 / 8.0f64).sqrt();
        assert!((r.factors["symbol_lorentz_norm"] - sym).abs() < 1e-12);
    }

    #[test]
    fn multiplier_51_psi_factor() {
        let f = make_cyclic(8).unwrap();
        let d = f.default_reference().unwrap();
        let a = MultiplierOp::new(f.clone(), f.random_dual(&mut rng(8))).unwrap();
        let psi = AlgElement::from_real_values(f.dual().clone(), &[1.0, 2.0, 0.5, 1.0, 1.0, 4.0, 1.0, 1.0]).unwrap();
        let r = lorentz_symbol_bound(&a, &psi, &d, 1.0, 3.0, 2.0, 2).unwrap();
        assert!((r.factors["psi_inverse_op"] - 2.0).abs() < 1e-12);
        let singular = AlgElement::from_real_values(f.dual().clone(), &[0.0; 8]).unwrap();
        assert!(lorentz_symbol_bound(&a, &singular, &d, 1.0, 3.0, 2.0, 2).is_err());
    }

    #[test]
    fn multiplier_51_scaling() {
        let f = make_finite_group(FiniteGroup::symmetric(3).unwrap()).unwrap();
        let d = f.default_reference().unwrap();
        let a = MultiplierOp::new(f.clone(), f.random_dual(&mut rng(9))).unwrap();
        let psi = AlgElement::identity(f.dual().clone());
        let base = lorentz_symbol_bound(&a, &psi, &d, 1.0, 4.0, 1.0, 3).unwrap();
        let scaled = lorentz_symbol_bound(&a.scaled(5.0), &psi, &d, 1.0, 4.0, 1.0, 3).unwrap();
        assert!((base.ratio - scaled.ratio).abs() < 1e-10 * base.ratio);
    }

    #[test]
    fn multiplier_56_closed_forms() {
        let n = 16;
        let f = make_cyclic(n).unwrap();
        let d = f.default_reference().unwrap();
        let a = MultiplierOp::identity(f.clone());
        let phi = default_weight(n);
        let (p, q) = (3.0, 2.0);
        let r = weighted_symbol_bound(&a, &d, 1.0, p, q, &phi, 0).unwrap();
        assert!((r.params.gamma.unwrap() - 6.0).abs() < 1e-12);
        assert!((r.lhs - 1.0).abs() < 1e-9);
        // weighted factor: ∫ φ^{γ(1/p−1/q)} μ(𝓓)^γ, evaluated directly on the merged grid
        let mu = d.element().singular_value_function();
        let gamma = 6.0;
        let e = gamma * (1.0 / p - 1.0 / q);
        let mut acc = 0.0;
        let mut grid: Vec<f64> = mu.breakpoints().iter().chain(phi.breakpoints()).copied().collect();
        grid.sort_by(f64::total_cmp);
        grid.dedup();
        for w in grid.windows(2) {
            let (m, ph) = (mu.eval(w[0]).unwrap(), phi.eval(w[0]).unwrap());
            if m > 0.0 {
                acc += m.powf(gamma) * ph.powf(e) * (w[1] - w[0]);
            }
        }
        assert!((r.factors["weighted_gamma_norm"] - acc.powf(1.0 / gamma)).abs() < 1e-10 * acc.powf(1.0 / gamma));
        assert!(weighted_symbol_bound(&a, &d, 1.0, 2.0, 2.0, &phi, 0).is_err());
    }

    #[test]
    fn multiplier_56_phi_drops_out_at_q_equal_p() {
        let f = make_cyclic(16).unwrap();
        let d = f.default_reference().unwrap();
        let a = MultiplierOp::new(f.clone(), f.random_dual(&mut rng(10))).unwrap();
        let r1 = weighted_symbol_bound(&a, &d, 1.0, 4.0, 4.0, &default_weight(16), 0).unwrap();
        let r2 = weighted_symbol_bound(&a, &d, 1.0, 4.0, 4.0, &StepFunction::indicator(3.0, 2.0).unwrap(), 0).unwrap();
        assert!((r1.rhs - r2.rhs).abs() < 1e-10 * r1.rhs);
    }

    #[test]
    fn l2_norm_of_multiplier_is_symbol_norm() {
        let mut g = rng(11);
        for f in [make_cyclic(12).unwrap(), make_finite_group(FiniteGroup::dihedral4().unwrap()).unwrap()] {
            let a = MultiplierOp::new(f.clone(), f.random_dual(&mut g)).unwrap();
            let (op, sym) = multiplier_l2_norms(&a).unwrap();
            assert!((op - sym).abs() < 1e-10 * sym);
        }
    }

    #[test]
    fn dyadic_single_band_and_zero() {
        let n = 64;
        let f = make_cyclic(n).unwrap();
        let psi = AlgElement::identity(f.dual().clone());
        // |k| = 5 or 6 lie only in the band (4, 16) of j = 3 and (2, 8) of j = 2
        let mut sigma = vec![0.0; n];
        sigma[5] = 1.0;
        sigma[n - 6] = -2.0;
        let a = MultiplierOp::new(f.clone(), AlgElement::from_real_values(f.dual().clone(), &sigma).unwrap()).unwrap();
        let rep = dyadic_projection_identity(&a, &psi, 1.0).unwrap();
        assert_eq!(rep.report.lhs, rep.report.rhs);
        assert_eq!(rep.band_norms[3], rep.report.rhs);
        let zero = MultiplierOp::new(f.clone(), AlgElement::zeros(f.dual().clone())).unwrap();
        let z = dyadic_projection_identity(&zero, &psi, 1.0).unwrap();
        assert_eq!((z.report.lhs, z.report.rhs), (0.0, 0.0));
        assert!(dyadic_projection_identity(&MultiplierOp::identity(make_cyclic(12).unwrap()), &AlgElement::identity(make_cyclic(12).unwrap().dual().clone()), 1.0).is_err());
    }

    #[test]
    fn dyadic_random_symbols() {
        let f = make_cyclic(64).unwrap();
        let psi = AlgElement::identity(f.dual().clone());
        let mut g = rng(12);
        for _ in 0..20 {
            let a = MultiplierOp::new(f.clone(), f.random_dual(&mut g)).unwrap();
            let rep = dyadic_projection_identity(&a, &psi, 1.0).unwrap();
            assert!(rep.report.ratio <= 1.0 && rep.report.ratio >= 0.5, "{}", rep.report.ratio);
            assert!(rep.windows_monotone && rep.window_converged);
        }
    }

    #[test]
    fn submultiplicativity_on_random_pairs() {
        let mut g = rng(13);
        let alg = VnAlgebra::new(vec![
            crate::vn_model::Block { n: 3, w: 0.5 },
            crate::vn_model::Block { n: 1, w: 2.0 },
            crate::vn_model::Block { n: 2, w: 1.0 },
        ])
        .unwrap()
        .into_arc();
        for _ in 0..50 {
            let x = AlgElement::random(alg.clone(), &mut g);
            let y = AlgElement::random(alg.clone(), &mut g);
            let r = check_submultiplicativity(&x, &y).unwrap();
            assert_eq!(r.violations, 0, "{r:?}");
        }
    }

    #[test]
    fn trivial_instance_hausdorff_young() {
        let f = make_trivial(VnAlgebra::commutative(&[1.0, 2.0, 1.5]).unwrap()).unwrap();
        let x = f.random_source(&mut rng(14));
        for p in [1.0, 4.0 / 3.0, 1.5, 2.0] {
            assert!(!check_hausdorff_young(&f, &x, p).unwrap().exceeds_unit);
        }
    }
}
