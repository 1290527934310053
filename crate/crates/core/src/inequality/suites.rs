//! Seeded randomized suites. Trial `i` of a suite with base seed `s` draws
//! everything from `ChaCha8Rng::seed_from_u64(s + i)`, so any single trial
//! can be replayed from the seed in its report.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::checks::{
    check_dual_hlp, check_hardy_littlewood, check_hausdorff_young, check_hy_lorentz, check_hyp, check_paley,
    dyadic_projection_identity, lorentz_symbol_bound, weighted_symbol_bound, DyadicReport,
};
use super::report::{validate_exponents, InequalityKind, InequalityReport};
use crate::error::{Error, Result};
use crate::fourier::{FourierStructure, MultiplierOp};
use crate::rearrangement::default_weight;
use crate::vn_model::AlgElement;

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteSpec {
    pub kind: InequalityKind,
    pub p: f64,
    pub q: Option<f64>,
    pub beta: f64,
    pub trials: usize,
    pub seed: u64,
}

impl SuiteSpec {
    pub fn new(kind: InequalityKind, p: f64) -> Self {
        SuiteSpec { kind, p, q: None, beta: 1.0, trials: 100, seed: 0 }
    }

    pub fn q(mut self, q: f64) -> Self {
        self.q = Some(q);
        self
    }

    pub fn trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn beta(mut self, beta: f64) -> Self {
        self.beta = beta;
        self
    }
}

pub fn trial_seed(base: u64, trial: usize) -> u64 {
    base.wrapping_add(trial as u64)
}

/// Runs `spec.trials` independent trials in parallel and returns the reports
/// in trial order.
pub fn run_suite(f: &FourierStructure, spec: &SuiteSpec) -> Result<Vec<InequalityReport>> {
    if spec.kind == InequalityKind::Dyadic {
        return Err(Error::Config("dyadic runs go through dyadic_sweep".into()));
    }
    validate_exponents(spec.kind, spec.p, spec.q)?;
    let needs_reference = matches!(
        spec.kind,
        InequalityKind::HardyLittlewood
            | InequalityKind::DualHardyLittlewood
            | InequalityKind::MultiplierLorentz
            | InequalityKind::MultiplierWeighted
    );
    let reference = if needs_reference { Some(f.default_reference()?) } else { None };
    let phi = default_weight(f.source().dim().max(2));
    let psi = AlgElement::identity(f.dual().clone());

    (0..spec.trials)
        .into_par_iter()
        .map(|trial| {
            let seed = trial_seed(spec.seed, trial);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (p, q) = (spec.p, spec.q.unwrap_or(f64::NAN));
            let d = reference.as_ref();
            let report = match spec.kind {
                InequalityKind::HausdorffYoung => check_hausdorff_young(f, &f.random_source(&mut rng), p),
                InequalityKind::HausdorffYoungLorentz => check_hy_lorentz(f, &f.random_source(&mut rng), p),
                InequalityKind::Paley => check_paley(f, &f.random_source(&mut rng), p, &phi),
                InequalityKind::HausdorffYoungPaley => check_hyp(f, &f.random_source(&mut rng), p, q, &phi),
                InequalityKind::HardyLittlewood => {
                    check_hardy_littlewood(f, &f.random_source(&mut rng), p, d.unwrap(), spec.beta)
                }
                InequalityKind::DualHardyLittlewood => {
                    check_dual_hlp(f, &f.random_source(&mut rng), p, d.unwrap(), spec.beta)
                }
                InequalityKind::MultiplierLorentz => {
                    let a = MultiplierOp::new(f.clone(), f.random_dual(&mut rng))?;
                    lorentz_symbol_bound(&a, &psi, d.unwrap(), spec.beta, p, q, seed)
                }
                InequalityKind::MultiplierWeighted => {
                    let a = MultiplierOp::new(f.clone(), f.random_dual(&mut rng))?;
                    weighted_symbol_bound(&a, d.unwrap(), spec.beta, p, q, &phi, seed)
                }
                InequalityKind::Dyadic => unreachable!(),
            }?;
            Ok(report.with_seed(seed, trial))
        })
        .collect()
}

/// Random symbols on a cyclic instance pushed through the dyadic band check.
pub fn dyadic_sweep(f: &FourierStructure, s: f64, trials: usize, seed: u64) -> Result<Vec<DyadicReport>> {
    let psi = AlgElement::identity(f.dual().clone());
    (0..trials)
        .into_par_iter()
        .map(|trial| {
            let ts = trial_seed(seed, trial);
            let mut rng = ChaCha8Rng::seed_from_u64(ts);
            let a = MultiplierOp::new(f.clone(), f.random_dual(&mut rng))?;
            let mut rep = dyadic_projection_identity(&a, &psi, s)?;
            rep.report = rep.report.with_seed(ts, trial);
            Ok(rep)
        })
        .collect()
}

/// Per-cell statistics of a batch of reports, cells keyed by kind and
/// exponents.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellSummary {
    pub kind: InequalityKind,
    pub instance: String,
    pub p: f64,
    pub q: Option<f64>,
    pub count: usize,
    pub max_ratio: f64,
    pub median_ratio: f64,
    pub exceeding: Vec<u64>,
}

impl CellSummary {
    /// `max ≤ 10 × median`.
    pub fn spread_is_stable(&self) -> bool {
        self.max_ratio <= 10.0 * self.median_ratio
    }
}

pub fn summarize(reports: &[InequalityReport]) -> Vec<CellSummary> {
    let mut cells: Vec<CellSummary> = Vec::new();
    let mut ratios: Vec<Vec<f64>> = Vec::new();
    for r in reports {
        let idx = cells.iter().position(|c| {
            c.kind == r.kind && c.instance == r.instance && c.p == r.params.p && c.q == r.params.q
        });
        let idx = idx.unwrap_or_else(|| {
            cells.push(CellSummary {
                kind: r.kind,
                instance: r.instance.clone(),
                p: r.params.p,
                q: r.params.q,
                count: 0,
                max_ratio: 0.0,
                median_ratio: 0.0,
                exceeding: Vec::new(),
            });
            ratios.push(Vec::new());
            cells.len() - 1
        });
        let c = &mut cells[idx];
        c.count += 1;
        c.max_ratio = c.max_ratio.max(r.ratio);
        if r.exceeds_unit {
            c.exceeding.push(r.seed.unwrap_or_default());
        }
        ratios[idx].push(r.ratio);
    }
    for (c, mut rs) in cells.iter_mut().zip(ratios) {
        rs.sort_by(f64::total_cmp);
        let m = rs.len();
        c.median_ratio = if m % 2 == 1 { rs[m / 2] } else { 0.5 * (rs[m / 2 - 1] + rs[m / 2]) };
    }
    cells
}
