//! Two-sided estimates of `‖K‖_{L^p → L^q}` for kernels on a commutative
//! algebra `ℂ^m` with point masses `w_i`.
//!
//! `p = 1, 2, ∞` are computed exactly. For other `p` the lower end of the
//! bracket is the best quotient `‖Kx‖_p / ‖x‖_p` found by a nonlinear power
//! iteration (each quotient is an attained value, so it is a certified lower
//! bound), and the upper end is the Riesz–Thorin interpolant of the two
//! nearest exact exponents.

use nalgebra::DVector;
use rand::Rng;

use super::element::random_c64;
use super::{CMatrix, VnAlgebra, C64};
use crate::error::{Error, Result};

const ASCENT_ITERS: usize = 500;
const ASCENT_RTOL: f64 = 1e-10;
const RANDOM_STARTS: usize = 16;
const BASIS_STARTS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormBracket {
    pub lower: f64,
    pub upper: f64,
    pub exact: bool,
}

struct WeightedKernel<'a> {
    w: Vec<f64>,
    k: &'a CMatrix,
}

impl<'a> WeightedKernel<'a> {
    fn new(alg: &VnAlgebra, k: &'a CMatrix) -> Result<Self> {
        if !alg.is_commutative() {
            return Err(Error::NonCommutative);
        }
        let m = alg.blocks().len();
        if k.nrows() != m || k.ncols() != m {
            return Err(Error::ShapeMismatch(format!("{}x{} kernel on {m} points", k.nrows(), k.ncols())));
        }
        Ok(WeightedKernel { w: alg.blocks().iter().map(|b| b.w).collect(), k })
    }

    fn norm(&self, x: &DVector<C64>, p: f64) -> f64 {
        if p.is_infinite() {
            return x.iter().map(|z| z.norm()).fold(0.0, f64::max);
        }
        x.iter().zip(&self.w).map(|(z, w)| w * z.norm().powf(p)).sum::<f64>().powf(1.0 / p)
    }

    /// Adjoint with respect to `⟨a, b⟩ = Σ w_i a_i conj(b_i)`.
    fn adjoint_apply(&self, z: &DVector<C64>) -> DVector<C64> {
        let weighted = DVector::from_iterator(z.len(), z.iter().zip(&self.w).map(|(v, w)| v * *w));
        let mut v = self.k.adjoint() * weighted;
        for (vj, wj) in v.iter_mut().zip(&self.w) {
            *vj /= *wj;
        }
        v
    }

    fn norm_1(&self) -> f64 {
        (0..self.k.ncols())
            .map(|j| {
                let col: f64 = (0..self.k.nrows()).map(|i| self.w[i] * self.k[(i, j)].norm()).sum();
                col / self.w[j]
            })
            .fold(0.0, f64::max)
    }

    fn norm_inf(&self) -> f64 {
        (0..self.k.nrows())
            .map(|i| (0..self.k.ncols()).map(|j| self.k[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    fn norm_2(&self) -> f64 {
        let m = self.k.nrows();
        let conj = CMatrix::from_fn(m, m, |i, j| self.k[(i, j)] * (self.w[i] / self.w[j]).sqrt());
        conj.svd(false, false).singular_values.iter().copied().fold(0.0, f64::max)
    }

    fn norm_1_to_inf(&self) -> f64 {
        let mut best = 0.0f64;
        for i in 0..self.k.nrows() {
            for j in 0..self.k.ncols() {
                best = best.max(self.k[(i, j)].norm() / self.w[j]);
            }
        }
        best
    }

    /// Best `‖Kx‖_q / ‖x‖_p` over the iteration
    /// `x ← J_{p'}(K^† J_q(Kx))`, `J_s(y) = |y|^{s-1} sgn(y)`.
    fn ascent<R: Rng + ?Sized>(&self, p: f64, q: f64, rng: &mut R) -> f64 {
        let m = self.w.len();
        let p_dual = p / (p - 1.0);
        let mut starts: Vec<DVector<C64>> = (0..RANDOM_STARTS)
            .map(|_| DVector::from_fn(m, |_, _| random_c64(rng)))
            .collect();
        starts.push(DVector::from_element(m, C64::new(1.0, 0.0)));
        let mut cols: Vec<(f64, usize)> = (0..m)
            .map(|j| (self.norm(&self.k.column(j).into_owned(), q) / self.w[j].powf(1.0 / p), j))
            .collect();
        cols.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
        for &(_, j) in cols.iter().take(BASIS_STARTS) {
            let mut e = DVector::from_element(m, C64::new(0.0, 0.0));
            e[j] = C64::new(1.0, 0.0);
            starts.push(e);
        }

        let dual_map = |y: &DVector<C64>, s: f64| -> DVector<C64> {
            y.map(|z| {
                let r = z.norm();
                if r == 0.0 {
                    C64::new(0.0, 0.0)
                } else {
                    z * r.powf(s - 2.0)
                }
            })
        };

        let mut best = 0.0f64;
        for mut x in starts {
            let mut prev = 0.0f64;
            for _ in 0..ASCENT_ITERS {
                let nx = self.norm(&x, p);
                if nx == 0.0 {
                    break;
                }
                x /= C64::new(nx, 0.0);
                let y = self.k * &x;
                let quotient = self.norm(&y, q);
                best = best.max(quotient);
                if quotient == 0.0 || (quotient - prev).abs() <= ASCENT_RTOL * quotient {
                    break;
                }
                prev = quotient;
                let v = self.adjoint_apply(&dual_map(&y, q));
                x = dual_map(&v, p_dual);
            }
        }
        best
    }
}

/// Bracket for `‖K‖_{L^p → L^p}`, `p ∈ [1, ∞]`.
pub fn operator_pnorm_bracket<R: Rng + ?Sized>(
    alg: &VnAlgebra,
    kernel: &CMatrix,
    p: f64,
    rng: &mut R,
) -> Result<NormBracket> {
    if !(p >= 1.0) {
        return Err(Error::InvalidExponent(format!("p = {p} must lie in [1, ∞]")));
    }
    let wk = WeightedKernel::new(alg, kernel)?;
    let exact = |v: f64| NormBracket { lower: v, upper: v, exact: true };
    if p == 1.0 {
        return Ok(exact(wk.norm_1()));
    }
    if p == 2.0 {
        return Ok(exact(wk.norm_2()));
    }
    if p.is_infinite() {
        return Ok(exact(wk.norm_inf()));
    }
    let upper = if p < 2.0 {
        let theta = 2.0 - 2.0 / p;
        wk.norm_1().powf(1.0 - theta) * wk.norm_2().powf(theta)
    } else {
        let theta = 1.0 - 2.0 / p;
        wk.norm_2().powf(1.0 - theta) * wk.norm_inf().powf(theta)
    };
    let mut lower = wk.ascent(p, p, rng);
    // rounding only: an attained quotient can never beat the interpolation bound
    if lower > upper && lower <= upper * (1.0 + 1e-10) {
        lower = upper;
    }
    Ok(NormBracket { lower, upper, exact: false })
}

/// Certified lower bound on `‖K‖_{L^p → L^q}` for `1 < p`, `q < ∞`.
pub fn operator_norm_lower<R: Rng + ?Sized>(
    alg: &VnAlgebra,
    kernel: &CMatrix,
    p: f64,
    q: f64,
    rng: &mut R,
) -> Result<f64> {
    if !(p > 1.0 && p.is_finite() && q >= 1.0 && q.is_finite()) {
        return Err(Error::InvalidExponent(format!("ascent needs 1 < p < ∞ and 1 ≤ q < ∞, got ({p}, {q})")));
    }
    let wk = WeightedKernel::new(alg, kernel)?;
    Ok(wk.ascent(p, q, rng))
}

/// `‖K‖_{L^1 → L^∞} = max_{i,j} |K_ij| / w_j`.
pub fn exact_norm_1_to_inf(alg: &VnAlgebra, kernel: &CMatrix) -> Result<f64> {
    Ok(WeightedKernel::new(alg, kernel)?.norm_1_to_inf())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn circulant(c: &[C64]) -> CMatrix {
        let n = c.len();
        CMatrix::from_fn(n, n, |i, j| c[(i + n - j) % n])
    }

    #[test]
    fn identity_and_scalar_multiples() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let alg = VnAlgebra::uniform(6, 1.0).unwrap();
        let id = CMatrix::identity(6, 6);
        for p in [1.0, 1.3, 2.0, 3.5, f64::INFINITY] {
            let b = operator_pnorm_bracket(&alg, &id, p, &mut rng).unwrap();
            assert!((b.lower - 1.0).abs() < 1e-12 && (b.upper - 1.0).abs() < 1e-12, "p = {p}: {b:?}");
        }
        let b = operator_pnorm_bracket(&alg, &(id * C64::new(2.0, 0.0)), 1.7, &mut rng).unwrap();
        assert!((b.lower - 2.0).abs() < 1e-12 && (b.upper - 2.0).abs() < 1e-12);
    }

    #[test]
    fn random_circulant_p4() {
        // for convolution operators ‖K‖₂ ≤ ‖K‖_p ≤ ‖K‖₂^{1/2} ‖K‖_∞^{1/2}
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let alg = VnAlgebra::uniform(8, 1.0).unwrap();
        for _ in 0..10 {
            let c: Vec<C64> = (0..8).map(|_| random_c64(&mut rng)).collect();
            let k = circulant(&c);
            let n2 = operator_pnorm_bracket(&alg, &k, 2.0, &mut rng).unwrap().lower;
            let ninf = operator_pnorm_bracket(&alg, &k, f64::INFINITY, &mut rng).unwrap().lower;
            let b = operator_pnorm_bracket(&alg, &k, 4.0, &mut rng).unwrap();
            assert!(b.lower <= b.upper);
            assert!(b.lower >= n2 * (1.0 - 1e-9), "{} < {}", b.lower, n2);
            assert!(b.upper <= (n2 * ninf).sqrt() * (1.0 + 1e-12));
        }
    }

    #[test]
    fn log_norm_convex_in_inverse_exponent() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let alg = VnAlgebra::commutative(&[0.5, 1.0, 2.0, 0.25, 1.5]).unwrap();
        for _ in 0..50 {
            let k = CMatrix::from_fn(5, 5, |_, _| random_c64(&mut rng));
            let n1 = operator_pnorm_bracket(&alg, &k, 1.0, &mut rng).unwrap().lower;
            let n2 = operator_pnorm_bracket(&alg, &k, 2.0, &mut rng).unwrap().lower;
            let ninf = operator_pnorm_bracket(&alg, &k, f64::INFINITY, &mut rng).unwrap().lower;
            assert!(n2.ln() <= 0.5 * (n1.ln() + ninf.ln()) + 1e-12);
        }
    }

    #[test]
    fn weighted_exact_norms_match_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let alg = VnAlgebra::commutative(&[0.5, 2.0, 1.0]).unwrap();
        let k = CMatrix::from_fn(3, 3, |_, _| random_c64(&mut rng));
        let wk = WeightedKernel::new(&alg, &k).unwrap();
        // L¹: extreme points of the unit ball are δ_j / w_j
        let brute: f64 = (0..3)
            .map(|j| {
                let mut e = DVector::from_element(3, C64::new(0.0, 0.0));
                e[j] = C64::new(1.0 / wk.w[j], 0.0);
                wk.norm(&(&k * e), 1.0)
            })
            .fold(0.0, f64::max);
        assert!((brute - wk.norm_1()).abs() < 1e-12);
        let lower = wk.ascent(2.0, 2.0, &mut rng);
        assert!((lower - wk.norm_2()).abs() < 1e-8 * wk.norm_2());
    }

    #[test]
    fn rejects_noncommutative() {
        let alg = VnAlgebra::new(vec![super::super::Block { n: 2, w: 1.0 }]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let k = CMatrix::identity(4, 4);
        assert!(matches!(operator_pnorm_bracket(&alg, &k, 3.0, &mut rng), Err(Error::NonCommutative)));
    }
}
