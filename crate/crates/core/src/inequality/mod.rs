//! Both sides of the Fourier-analytic inequalities (Hausdorff–Young and its
//! Lorentz refinement, Paley, Hardy–Littlewood, multiplier bounds) on a
//! Fourier structure, packaged as serializable reports.

mod checks;
mod report;
mod suites;

pub use checks::{
    check_dual_hlp, check_hardy_littlewood, check_hausdorff_young, check_hy_lorentz, check_hyp, check_paley,
    check_submultiplicativity, dyadic_projection_identity, lorentz_symbol_bound, weighted_symbol_bound,
    multiplier_l2_norms, DyadicReport, SubmultiplicativityReport,
};
pub use report::{
    conjugate, format_real, hardy_littlewood_r, multiplier_r, real, real_map, real_opt, safe_ratio,
    validate_exponents, weighted_gamma, Exponents, InequalityKind, InequalityReport, UNIT_TOL,
};
pub use suites::{dyadic_sweep, run_suite, summarize, trial_seed, CellSummary, SuiteSpec};
