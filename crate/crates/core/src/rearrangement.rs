//! Exact calculus of right-continuous, non-increasing step functions on `(0, ∞)`.
//!
//! Every generalized singular value function of a finite-dimensional element is
//! a step function, so rearrangements, distribution functions and Lorentz
//! quasi-norms are evaluated in closed form here. Continuous profiles such as
//! `1/t` enter through the explicit discretizers at the bottom of this module.
//!
//! Infinite quantities (an `L^{p,q}` norm of a function with a positive tail,
//! an unbounded Paley constant) are returned as `f64::INFINITY`. Exponents use
//! the same convention: `f64::INFINITY` stands for `∞`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A right-continuous non-increasing step function.
///
/// `breakpoints = [0, T_1, …, T_m]` and `values[i]` is the value on
/// `[T_i, T_{i+1})`; beyond `T_m` the function equals `tail`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StepFunctionRepr", into = "StepFunctionRepr")]
pub struct StepFunction {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
    tail: f64,
}

#[derive(Serialize, Deserialize)]
struct StepFunctionRepr {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
    #[serde(default)]
    tail: f64,
}

impl TryFrom<StepFunctionRepr> for StepFunction {
    type Error = Error;

    fn try_from(r: StepFunctionRepr) -> Result<Self> {
        StepFunction::new(r.breakpoints, r.values, r.tail)
    }
}

impl From<StepFunction> for StepFunctionRepr {
    fn from(f: StepFunction) -> Self {
        StepFunctionRepr { breakpoints: f.breakpoints, values: f.values, tail: f.tail }
    }
}

impl StepFunction {
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>, tail: f64) -> Result<Self> {
        let bad = |m: &str| Err(Error::InvalidStepFunction(m.to_string()));
        if breakpoints.len() != values.len() + 1 {
            return bad("need exactly one more breakpoint than values");
        }
        if breakpoints[0] != 0.0 {
            return bad("first breakpoint must be 0");
        }
        if breakpoints.windows(2).any(|w| !(w[1] > w[0]) || !w[1].is_finite()) {
            return bad("breakpoints must be finite and strictly increasing");
        }
        if !(tail.is_finite() && tail >= 0.0) {
            return bad("tail must be finite and non-negative");
        }
        if values.iter().any(|v| !(v.is_finite() && *v >= tail)) {
            return bad("values must be finite and not below the tail");
        }
        if values.windows(2).any(|w| w[1] > w[0]) {
            return bad("values must be non-increasing");
        }
        Ok(StepFunction { breakpoints, values, tail })
    }

    /// The function that is `value` on `[0, length)` and zero afterwards.
    pub fn indicator(value: f64, length: f64) -> Result<Self> {
        StepFunction::new(vec![0.0, length], vec![value], 0.0)
    }

    pub fn zero() -> Self {
        StepFunction { breakpoints: vec![0.0], values: Vec::new(), tail: 0.0 }
    }

    /// Decreasing rearrangement of a finite family of `(value, measure)` pieces.
    ///
    /// Pieces with zero measure or zero value are dropped and equal values are
    /// merged, so the result is the canonical representation.
    pub fn from_pieces<I>(pieces: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, f64)>,
    {
        let mut pieces: Vec<(f64, f64)> = pieces.into_iter().collect();
        for &(v, m) in &pieces {
            if !(v.is_finite() && v >= 0.0 && m.is_finite() && m >= 0.0) {
                return Err(Error::InvalidStepFunction(format!("bad piece ({v}, {m})")));
            }
        }
        pieces.retain(|&(v, m)| v > 0.0 && m > 0.0);
        pieces.sort_by(|a, b| b.0.total_cmp(&a.0));

        let mut breakpoints = vec![0.0];
        let mut values: Vec<f64> = Vec::new();
        let mut acc = 0.0;
        for (v, m) in pieces {
            acc += m;
            if values.last() == Some(&v) {
                *breakpoints.last_mut().unwrap() = acc;
            } else {
                values.push(v);
                breakpoints.push(acc);
            }
        }
        StepFunction::new(breakpoints, values, 0.0)
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn tail(&self) -> f64 {
        self.tail
    }

    /// Right end of the last finite interval.
    pub fn support_end(&self) -> f64 {
        *self.breakpoints.last().unwrap()
    }

    /// `(start, end, value)` for each finite interval.
    pub fn pieces(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.breakpoints
            .windows(2)
            .zip(&self.values)
            .map(|(w, &v)| (w[0], w[1], v))
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0) {
            return Err(Error::NegativeArgument(t));
        }
        // index of the last breakpoint <= t
        let idx = self.breakpoints.partition_point(|&b| b <= t) - 1;
        Ok(self.values.get(idx).copied().unwrap_or(self.tail))
    }

    /// Left limit `f(t⁻)`; equals `f(0)` at `t = 0`.
    pub fn eval_left(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0) {
            return Err(Error::NegativeArgument(t));
        }
        if t == 0.0 {
            return self.eval(0.0);
        }
        let idx = self.breakpoints.partition_point(|&b| b < t) - 1;
        Ok(self.values.get(idx).copied().unwrap_or(self.tail))
    }

    /// Lebesgue measure of `{t : f(t) > s}`.
    pub fn distribution(&self, s: f64) -> f64 {
        if self.tail > s {
            return f64::INFINITY;
        }
        self.pieces().filter(|p| p.2 > s).map(|(a, b, _)| b - a).sum()
    }

    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c >= 0.0 && c.is_finite()) {
            return Err(Error::InvalidStepFunction(format!("scale factor {c}")));
        }
        StepFunction::new(
            self.breakpoints.clone(),
            self.values.iter().map(|v| v * c).collect(),
            self.tail * c,
        )
    }

    /// `f(t)^e` for `e > 0`, which preserves monotonicity.
    pub fn powf(&self, e: f64) -> Result<Self> {
        if !(e > 0.0 && e.is_finite()) {
            return Err(Error::InvalidExponent(format!("power {e} must be positive")));
        }
        StepFunction::new(
            self.breakpoints.clone(),
            self.values.iter().map(|v| v.powf(e)).collect(),
            self.tail.powf(e),
        )
    }

    /// Pointwise product. Both factors are non-increasing and non-negative,
    /// so the product is already its own decreasing rearrangement.
    pub fn pointwise_product(&self, other: &StepFunction) -> StepFunction {
        let grid = merged_breakpoints(&[self, other]);
        let mut values = Vec::with_capacity(grid.len() - 1);
        for w in grid.windows(2) {
            let a = self.eval(w[0]).unwrap();
            let b = other.eval(w[0]).unwrap();
            values.push(a * b);
        }
        StepFunction::new(grid, values, self.tail * other.tail)
            .expect("product of non-increasing step functions is non-increasing")
    }

    /// Lorentz quasi-norm `‖f‖_{L^{p,q}(ℝ₊)}`, `p, q ∈ (0, ∞]`.
    pub fn lorentz_quasinorm(&self, p: f64, q: f64) -> Result<f64> {
        check_exponent("p", p)?;
        check_exponent("q", q)?;
        if p.is_infinite() {
            if q.is_finite() {
                return Err(Error::InvalidExponent("L^{∞,q} with q < ∞ is undefined".into()));
            }
            return Ok(self.values.first().copied().unwrap_or(self.tail).max(self.tail));
        }
        if self.tail > 0.0 {
            return Ok(f64::INFINITY);
        }
        if q.is_infinite() {
            // the sup over [T_{i-1}, T_i) is the limit at the right endpoint
            return Ok(self
                .pieces()
                .map(|(_, b, v)| v * b.powf(1.0 / p))
                .fold(0.0, f64::max));
        }
        let e = q / p;
        let sum: f64 = self
            .pieces()
            .map(|(a, b, v)| v.powf(q) * (p / q) * (b.powf(e) - a.powf(e)))
            .sum();
        Ok(sum.powf(1.0 / q))
    }

    /// Weak quasi-norm `(sup_{s>0} s^p m{f > s})^{1/p}` computed from the
    /// distribution function rather than from the rearrangement.
    pub fn weak_quasinorm_via_distribution(&self, p: f64) -> Result<f64> {
        check_exponent("p", p)?;
        if p.is_infinite() {
            return Err(Error::InvalidExponent("p must be finite".into()));
        }
        if self.tail > 0.0 {
            return Ok(f64::INFINITY);
        }
        // For s just below a level ℓ, m{f > s} is the measure of {f ≥ ℓ}.
        let mut best = 0.0f64;
        for &level in self.values.iter().filter(|&&v| v > 0.0) {
            let measure: f64 = self
                .pieces()
                .filter(|p| p.2 >= level)
                .map(|(a, b, _)| b - a)
                .sum();
            best = best.max(level.powf(p) * measure);
        }
        Ok(best.powf(1.0 / p))
    }

    /// `M_φ = sup_{s>0} s · m{φ ≥ s}`; the sup is attained at a value of `φ`.
    pub fn paley_constant(&self) -> f64 {
        if self.tail > 0.0 {
            return f64::INFINITY;
        }
        self.values
            .iter()
            .map(|&s| {
                let m: f64 = self.pieces().filter(|p| p.2 >= s).map(|(a, b, _)| b - a).sum();
                s * m
            })
            .fold(0.0, f64::max)
    }
}

fn check_exponent(name: &str, e: f64) -> Result<()> {
    if e > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidExponent(format!("{name} = {e} must lie in (0, ∞]")))
    }
}

fn merged_breakpoints(fs: &[&StepFunction]) -> Vec<f64> {
    let mut grid: Vec<f64> = fs.iter().flat_map(|f| f.breakpoints.iter().copied()).collect();
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    grid
}

/// Checks `(fg)*(t₁ + t₂) ≤ f*(t₁) · g*(t₂)`.
pub fn pointwise_product_bound(f: &StepFunction, g: &StepFunction, t1: f64, t2: f64) -> Result<bool> {
    let prod = f.pointwise_product(g);
    Ok(prod.eval(t1 + t2)? <= f.eval(t1)? * g.eval(t2)?)
}

/// Empirical constant in the weak-type Lorentz–Hölder inequality
/// `‖fg‖_{r,∞} ≤ K ‖f‖_{p,∞} ‖g‖_{q,∞}` with `1/r = 1/p + 1/q`.
pub fn lorentz_holder_ratio(f: &StepFunction, g: &StepFunction, p: f64, q: f64) -> Result<f64> {
    let r = 1.0 / (1.0 / p + 1.0 / q);
    let lhs = f.pointwise_product(g).lorentz_quasinorm(r, f64::INFINITY)?;
    let rhs = f.lorentz_quasinorm(p, f64::INFINITY)? * g.lorentz_quasinorm(q, f64::INFINITY)?;
    Ok(if rhs > 0.0 { lhs / rhs } else { 0.0 })
}

/// `∫₀^∞ Π_i f_i(t)^{a_i} dt` over step functions, in closed form.
///
/// Where a factor with a positive exponent vanishes the integrand is zero,
/// regardless of factors raised to negative powers there.
pub fn integrate_power_product(factors: &[(&StepFunction, f64)]) -> f64 {
    let fs: Vec<&StepFunction> = factors.iter().map(|f| f.0).collect();
    let grid = merged_breakpoints(&fs);
    let integrand = |vals: &mut dyn Iterator<Item = (f64, f64)>| -> f64 {
        let mut acc = 1.0;
        let mut blows_up = false;
        for (v, a) in vals {
            if a == 0.0 {
                continue;
            }
            if v == 0.0 {
                if a > 0.0 {
                    return 0.0;
                }
                blows_up = true;
            } else {
                acc *= v.powf(a);
            }
        }
        if blows_up {
            f64::INFINITY
        } else {
            acc
        }
    };

    let mut total = 0.0;
    for w in grid.windows(2) {
        let mut it = factors.iter().map(|(f, a)| (f.eval(w[0]).unwrap(), *a));
        let v = integrand(&mut it);
        if v > 0.0 {
            total += v * (w[1] - w[0]);
        }
    }
    let mut tails = factors.iter().map(|(f, a)| (f.tail, *a));
    if integrand(&mut tails) > 0.0 {
        return f64::INFINITY;
    }
    total
}

/// Lower step discretization of a non-increasing profile on a grid
/// `0 < t_1 < … < t_m`: the value on `[t_{i-1}, t_i)` is `φ(t_i)` (with
/// `t_0 = 0`), and the function vanishes beyond `t_m`.
pub fn discretize_decreasing<F>(profile: F, grid: &[f64]) -> Result<StepFunction>
where
    F: Fn(f64) -> f64,
{
    if grid.is_empty() || grid[0] <= 0.0 {
        return Err(Error::InvalidStepFunction("grid must start above 0".into()));
    }
    let mut breakpoints = Vec::with_capacity(grid.len() + 1);
    breakpoints.push(0.0);
    breakpoints.extend_from_slice(grid);
    let values = grid.iter().map(|&t| profile(t)).collect();
    StepFunction::new(breakpoints, values, 0.0)
}

/// Log-uniform grid `lo = t_0 < … < t_steps = hi`.
pub fn log_grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    let ratio = (hi / lo).ln();
    (0..=steps)
        .map(|i| {
            if i == steps {
                hi
            } else {
                lo * (ratio * i as f64 / steps as f64).exp()
            }
        })
        .collect()
}

/// Discretized `φ(t) = 1/t` on `[lo, hi]` with `steps` log-uniform cells.
pub fn reciprocal_profile(lo: f64, hi: f64, steps: usize) -> Result<StepFunction> {
    discretize_decreasing(|t| 1.0 / t, &log_grid(lo, hi, steps))
}

/// Default weight for Paley-type checks on an instance of size `n`:
/// `1/t` on `[1/n², n²]` with `4n` log-uniform cells.
pub fn default_weight(n: usize) -> StepFunction {
    let n = n.max(2) as f64;
    reciprocal_profile(1.0 / (n * n), n * n, 4 * n as usize).expect("valid reciprocal grid")
}
