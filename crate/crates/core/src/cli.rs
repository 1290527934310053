//! Command-line driver. `verify` runs seeded inequality suites and exits 2
//! when an exact-constant claim fails; `sweep` runs the spectral and dyadic
//! scans. Any flag may instead come from a JSON `--config` file; flags win.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::{parse_instance, random_axiom_check, AxiomReport, FourierStructure};
use crate::inequality::{
    check_submultiplicativity, conjugate, dyadic_sweep, format_real, multiplier_r, run_suite, trial_seed,
    validate_exponents, InequalityKind, InequalityReport, SubmultiplicativityReport, SuiteSpec,
};
use crate::spectral_asymptotics::{
    default_heat_beta, dyadic_dims, finiteness_boundary_cases, finiteness_grid, finiteness_scan, heat_decay,
    log_times, point_mass, random_spectrum, weak_norm_identity, GrowthLadder, Profile, WeakNormSides,
};
use crate::vn_model::SpectralModel;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;

/// Relative tolerance for the weak-norm identity.
pub const WEAK_NORM_TOL: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(name = "nclab", version, about = "Fourier inequalities on finite von Neumann algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Seeded randomized checks of one inequality.
    Verify(Flags),
    /// Finiteness, heat-decay and dyadic sweeps.
    Sweep(Flags),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// JSON file with any of the flags below as keys.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub kind: Option<String>,
    /// cyclic:N | group:NAME | trivial:W,NxW,... | dual:<instance>
    #[arg(long)]
    pub instance: Option<String>,
    /// Exponent or comma-separated grid.
    #[arg(long)]
    pub p: Option<String>,
    #[arg(long)]
    pub q: Option<String>,
    #[arg(long)]
    pub beta: Option<String>,
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long)]
    pub r: Option<String>,
    #[arg(long)]
    pub s: Option<String>,
    /// `LO..HI` (powers of two) or a comma-separated list.
    #[arg(long)]
    pub dims: Option<String>,
    /// `log:LO:HI:N`, `lin:LO:HI:N` or a comma-separated list.
    #[arg(long)]
    pub tgrid: Option<String>,
    /// exp | inverse | inverse-square
    #[arg(long)]
    pub phi: Option<String>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

/// A grid value in a config file: a number, a list of numbers, or the same
/// text accepted on the command line.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum GridValue {
    Number(f64),
    List(Vec<f64>),
    Text(String),
}

impl GridValue {
    fn into_text(self) -> String {
        match self {
            GridValue::Number(v) => format_real(v),
            GridValue::List(v) => v.iter().map(|x| format_real(*x)).collect::<Vec<_>>().join(","),
            GridValue::Text(t) => t,
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    kind: Option<String>,
    instance: Option<String>,
    p: Option<GridValue>,
    q: Option<GridValue>,
    beta: Option<GridValue>,
    alpha: Option<GridValue>,
    r: Option<GridValue>,
    s: Option<GridValue>,
    dims: Option<GridValue>,
    tgrid: Option<GridValue>,
    phi: Option<String>,
    trials: Option<usize>,
    seed: Option<u64>,
    out: Option<PathBuf>,
    format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Verify,
    Sweep,
}

/// Fully resolved run description. Grids are empty when not given.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub mode: Mode,
    pub kind: String,
    pub instance: Option<String>,
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub beta: Vec<f64>,
    pub alpha: Vec<f64>,
    pub r: Vec<f64>,
    pub s: Vec<f64>,
    pub dims: Vec<usize>,
    pub tgrid: Vec<f64>,
    pub phi: Vec<Profile>,
    pub trials: Option<usize>,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: Format,
}

fn parse_real(text: &str) -> Result<f64> {
    let t = text.trim();
    match t {
        "inf" | "infinity" | "∞" => Ok(f64::INFINITY),
        _ => t.parse::<f64>().map_err(|_| Error::Config(format!("not a number: {t:?}"))),
    }
}

/// Comma-separated reals; `inf` allowed.
pub fn parse_grid(text: &str) -> Result<Vec<f64>> {
    text.split(',').filter(|s| !s.trim().is_empty()).map(parse_real).collect()
}

/// `LO..HI` expands to the powers of two in range.
pub fn parse_dims(text: &str) -> Result<Vec<usize>> {
    let bad = || Error::Config(format!("bad dimension list {text:?}"));
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().parse().map_err(|_| bad())?;
        let dims = dyadic_dims(lo, hi);
        if dims.is_empty() {
            return Err(bad());
        }
        return Ok(dims);
    }
    text.split(',').map(|s| s.trim().parse::<usize>().map_err(|_| bad())).collect()
}

/// `log:LO:HI:N`, `lin:LO:HI:N`, or a plain list.
pub fn parse_tgrid(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [mode @ ("log" | "lin"), lo, hi, n] => {
            let (lo, hi) = (parse_real(lo)?, parse_real(hi)?);
            let n: usize = n.trim().parse().map_err(|_| Error::Config(format!("bad point count in {text:?}")))?;
            if n == 0 || !(hi >= lo) || !lo.is_finite() || !hi.is_finite() {
                return Err(Error::Config(format!("bad time grid {text:?}")));
            }
            if *mode == "log" {
                if !(lo > 0.0) {
                    return Err(Error::Config("log grids need a positive start".into()));
                }
                Ok(log_times(lo, hi, n))
            } else if n == 1 {
                Ok(vec![lo])
            } else {
                Ok((0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect())
            }
        }
        _ => parse_grid(text),
    }
}

impl ExperimentConfig {
    /// Merges flags over the optional config file.
    pub fn resolve(mode: Mode, flags: &Flags) -> Result<Self> {
        let file = match &flags.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)?;
                serde_json::from_str::<ConfigFile>(&text)
                    .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?
            }
            None => ConfigFile::default(),
        };
        let pick = |flag: &Option<String>, file: Option<GridValue>| flag.clone().or(file.map(GridValue::into_text));
        let grid = |flag: &Option<String>, file: Option<GridValue>| -> Result<Vec<f64>> {
            pick(flag, file).map(|t| parse_grid(&t)).transpose().map(Option::unwrap_or_default)
        };
        let kind = flags.kind.clone().or(file.kind).ok_or_else(|| Error::Config("--kind is required".into()))?;
        let phi = match flags.phi.clone().or(file.phi) {
            Some(text) => text.split(',').map(|t| Profile::parse(t.trim())).collect::<Result<Vec<_>>>()?,
            None => Vec::new(),
        };
        Ok(ExperimentConfig {
            mode,
            kind,
            instance: flags.instance.clone().or(file.instance),
            p: grid(&flags.p, file.p)?,
            q: grid(&flags.q, file.q)?,
            beta: grid(&flags.beta, file.beta)?,
            alpha: grid(&flags.alpha, file.alpha)?,
            r: grid(&flags.r, file.r)?,
            s: grid(&flags.s, file.s)?,
            dims: pick(&flags.dims, file.dims).map(|t| parse_dims(&t)).transpose()?.unwrap_or_default(),
            tgrid: pick(&flags.tgrid, file.tgrid).map(|t| parse_tgrid(&t)).transpose()?.unwrap_or_default(),
            phi,
            trials: flags.trials.or(file.trials),
            seed: flags.seed.or(file.seed).unwrap_or(0),
            out: flags.out.clone().or(file.out),
            format: flags.format.or(file.format).unwrap_or_default(),
        })
    }

    fn instance_or(&self, default: &str) -> Result<FourierStructure> {
        parse_instance(self.instance.as_deref().unwrap_or(default))
    }

    fn beta_or(&self, default: f64) -> Vec<f64> {
        if self.beta.is_empty() {
            vec![default]
        } else {
            self.beta.clone()
        }
    }
}

/// Report text plus the seeds of exact-constant violations.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub violations: Vec<u64>,
}

impl Outcome {
    fn push_line(&mut self, line: &str) {
        self.text.push_str(line);
        self.text.push('\n');
    }

    pub fn exit_code(&self) -> i32 {
        if self.violations.is_empty() {
            EXIT_OK
        } else {
            EXIT_VIOLATION
        }
    }
}

fn verify_kind(name: &str) -> Option<InequalityKind> {
    Some(match name {
        "hausdorff-young" | "hy" => InequalityKind::HausdorffYoung,
        "hy-lorentz" => InequalityKind::HausdorffYoungLorentz,
        "paley" => InequalityKind::Paley,
        "hyp" => InequalityKind::HausdorffYoungPaley,
        "hardy-littlewood" => InequalityKind::HardyLittlewood,
        "dual-hlp" => InequalityKind::DualHardyLittlewood,
        "multiplier-51" => InequalityKind::MultiplierLorentz,
        "multiplier-56" => InequalityKind::MultiplierWeighted,
        _ => return None,
    })
}

fn default_q(kind: InequalityKind, p: f64) -> Option<f64> {
    match kind {
        InequalityKind::HausdorffYoungPaley => Some(conjugate(p)),
        InequalityKind::MultiplierLorentz => Some(1.0),
        InequalityKind::MultiplierWeighted => Some(p),
        _ => None,
    }
}

fn needs_q(kind: InequalityKind) -> bool {
    default_q(kind, 2.0).is_some()
}

fn require_p(cfg: &ExperimentConfig) -> Result<&[f64]> {
    if cfg.p.is_empty() {
        return Err(Error::Config(format!("--p is required for {}", cfg.kind)));
    }
    Ok(&cfg.p)
}

fn trials(cfg: &ExperimentConfig, default: usize) -> usize {
    cfg.trials.unwrap_or(default)
}

/// Runs the `verify` command.
pub fn run_verify(cfg: &ExperimentConfig) -> Result<Outcome> {
    match cfg.kind.as_str() {
        "axioms" => return verify_axioms(cfg),
        "weak-norm" => return verify_weak_norm(cfg),
        "submultiplicativity" => return verify_submultiplicativity(cfg),
        _ => {}
    }
    let kind = verify_kind(&cfg.kind).ok_or_else(|| Error::Config(format!("unknown verify kind {:?}", cfg.kind)))?;
    let mut cells = Vec::new();
    for &p in require_p(cfg)? {
        let qs: Vec<Option<f64>> = match (needs_q(kind), cfg.q.is_empty()) {
            (true, true) => vec![default_q(kind, p)],
            (true, false) => cfg.q.iter().map(|&q| Some(q)).collect(),
            (false, true) => vec![None],
            (false, false) => return Err(Error::Config(format!("{} takes no q", cfg.kind))),
        };
        for q in qs {
            for &beta in &cfg.beta_or(1.0) {
                validate_exponents(kind, p, q)?;
                cells.push((p, q, beta));
            }
        }
    }
    let f = cfg.instance_or("cyclic:64")?;
    let mut out = Outcome::default();
    if cfg.format == Format::Csv {
        out.push_line(InequalityReport::CSV_HEADER);
    }
    for (p, q, beta) in cells {
        let mut spec = SuiteSpec::new(kind, p).trials(trials(cfg, 100)).seed(cfg.seed).beta(beta);
        spec.q = q;
        for report in run_suite(&f, &spec)? {
            if report.is_hard_violation() {
                out.violations.push(report.seed.unwrap_or_default());
            }
            match cfg.format {
                Format::Json => out.push_line(&report.to_json_line()?),
                Format::Csv => out.push_line(&report.to_csv_row()),
            }
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct Seeded<'a, T: Serialize> {
    kind: &'a str,
    instance: String,
    seed: u64,
    trial: usize,
    #[serde(flatten)]
    body: T,
}

fn seeded_trials<T, F>(cfg: &ExperimentConfig, default_trials: usize, run: F) -> Result<Vec<(u64, usize, T)>>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng) -> Result<T> + Sync,
{
    (0..trials(cfg, default_trials))
        .into_par_iter()
        .map(|trial| {
            let seed = trial_seed(cfg.seed, trial);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok((seed, trial, run(&mut rng)?))
        })
        .collect()
}

fn verify_axioms(cfg: &ExperimentConfig) -> Result<Outcome> {
    let f = cfg.instance_or("cyclic:64")?;
    let name = f.descriptor().to_string();
    let rows: Vec<(u64, usize, AxiomReport)> = seeded_trials(cfg, 100, |rng| random_axiom_check(&f, rng))?;
    let mut out = Outcome::default();
    if cfg.format == Format::Csv {
        out.push_line(
            "seed,inversion_source,inversion_dual,plancherel_source,plancherel_dual,\
             contraction_source,contraction_dual,module_source,module_dual",
        );
    }
    for (seed, trial, rep) in rows {
        if !rep.passes() {
            out.violations.push(seed);
        }
        match cfg.format {
            Format::Json => out.push_line(&serde_json::to_string(&Seeded {
                kind: "axioms",
                instance: name.clone(),
                seed,
                trial,
                body: &rep,
            })?),
            Format::Csv => {
                let cells = [
                    rep.inversion_source,
                    rep.inversion_dual,
                    rep.plancherel_source,
                    rep.plancherel_dual,
                    rep.contraction_source,
                    rep.contraction_dual,
                    rep.module_source,
                    rep.module_dual,
                ];
                let cells: Vec<String> = cells.iter().map(|v| format_real(*v)).collect();
                out.push_line(&format!("{seed},{}", cells.join(",")));
            }
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct WeakNormRow {
    phi: Profile,
    r: f64,
    dim: usize,
    lhs: f64,
    rhs: f64,
    relative_gap: f64,
}

fn verify_weak_norm(cfg: &ExperimentConfig) -> Result<Outcome> {
    let rs = if cfg.r.is_empty() { vec![1.0, 2.0, 4.0] } else { cfg.r.clone() };
    let phis = if cfg.phi.is_empty() { Profile::ALL.to_vec() } else { cfg.phi.clone() };
    let rows = seeded_trials(cfg, 100, |rng| {
        let l = random_spectrum(rng, 64)?;
        let dim = l.ladder().len();
        let mut rows = Vec::new();
        for &phi in &phis {
            for &r in &rs {
                let WeakNormSides { lhs, rhs } = weak_norm_identity(&l, |u| phi.eval(u), r)?;
                let relative_gap = (lhs - rhs).abs() / rhs;
                rows.push(WeakNormRow { phi, r, dim, lhs, rhs, relative_gap });
            }
        }
        Ok(rows)
    })?;
    let mut out = Outcome::default();
    if cfg.format == Format::Csv {
        out.push_line("seed,phi,r,dim,lhs,rhs,relative_gap");
    }
    for (seed, trial, group) in rows {
        if group.iter().any(|w| !(w.relative_gap < WEAK_NORM_TOL)) {
            out.violations.push(seed);
        }
        for w in group {
            match cfg.format {
                Format::Json => out.push_line(&serde_json::to_string(&Seeded {
                    kind: "weak-norm",
                    instance: "spectrum".into(),
                    seed,
                    trial,
                    body: &w,
                })?),
                Format::Csv => out.push_line(&format!(
                    "{seed},{},{},{},{},{},{}",
                    w.phi.name(),
                    format_real(w.r),
                    w.dim,
                    format_real(w.lhs),
                    format_real(w.rhs),
                    format_real(w.relative_gap)
                )),
            }
        }
    }
    Ok(out)
}

fn verify_submultiplicativity(cfg: &ExperimentConfig) -> Result<Outcome> {
    let f = cfg.instance_or("group:S3")?;
    let name = f.descriptor().to_string();
    let rows: Vec<(u64, usize, SubmultiplicativityReport)> = seeded_trials(cfg, 200, |rng| {
        let (x, y) = (f.random_dual(rng), f.random_dual(rng));
        check_submultiplicativity(&x, &y)
    })?;
    let mut out = Outcome::default();
    if cfg.format == Format::Csv {
        out.push_line("seed,checked,violations,worst_excess");
    }
    for (seed, trial, rep) in rows {
        if rep.violations > 0 {
            out.violations.push(seed);
        }
        match cfg.format {
            Format::Json => out.push_line(&serde_json::to_string(&Seeded {
                kind: "submultiplicativity",
                instance: name.clone(),
                seed,
                trial,
                body: &rep,
            })?),
            Format::Csv => out.push_line(&format!(
                "{seed},{},{},{}",
                rep.checked,
                rep.violations,
                format_real(rep.worst_excess)
            )),
        }
    }
    Ok(out)
}

/// Runs the `sweep` command.
pub fn run_sweep(cfg: &ExperimentConfig) -> Result<Outcome> {
    match cfg.kind.as_str() {
        "finiteness" => sweep_finiteness(cfg),
        "heat" => sweep_heat(cfg),
        "dyadic" => sweep_dyadic(cfg),
        other => Err(Error::Config(format!("unknown sweep kind {other:?} (finiteness, heat, dyadic)"))),
    }
}

fn sweep_finiteness(cfg: &ExperimentConfig) -> Result<Outcome> {
    let triples: Vec<(f64, f64, f64)> = if cfg.alpha.is_empty() && cfg.beta.is_empty() && cfg.r.is_empty() {
        finiteness_grid().into_iter().chain(finiteness_boundary_cases()).collect()
    } else {
        let or = |v: &Vec<f64>, d: f64| if v.is_empty() { vec![d] } else { v.clone() };
        let mut t = Vec::new();
        for a in or(&cfg.alpha, 1.0) {
            for b in or(&cfg.beta, 1.0) {
                for r in or(&cfg.r, 2.0) {
                    t.push((a, b, r));
                }
            }
        }
        t
    };
    let dims = if cfg.dims.is_empty() { dyadic_dims(16, 4096) } else { cfg.dims.clone() };
    let trends = triples
        .par_iter()
        .map(|&(a, b, r)| finiteness_scan(&GrowthLadder::new(a)?, b, r, &dims))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Outcome::default();
    if cfg.format == Format::Csv {
        out.push_line("alpha,beta,r,max_dim,norm,last_increase,observed,expected");
    }
    for t in trends {
        match cfg.format {
            Format::Json => out.push_line(&serde_json::to_string(&t)?),
            Format::Csv => out.push_line(&format!(
                "{},{},{},{},{},{},{},{}",
                format_real(t.alpha),
                format_real(t.beta),
                format_real(t.r),
                t.dims.last().copied().unwrap_or_default(),
                format_real(*t.norms.last().unwrap()),
                format_real(t.last_increase),
                serde_json::to_value(t.observed)?.as_str().unwrap_or_default(),
                serde_json::to_value(t.expected)?.as_str().unwrap_or_default(),
            )),
        }
    }
    Ok(out)
}

fn sweep_heat(cfg: &ExperimentConfig) -> Result<Outcome> {
    let f = cfg.instance_or("cyclic:128")?;
    let p = cfg.p.first().copied().unwrap_or(1.0);
    let q = cfg.q.first().copied().unwrap_or(f64::INFINITY);
    let alpha = cfg.alpha.first().copied().unwrap_or(1.0);
    let beta = match cfg.beta.first() {
        Some(b) => *b,
        None => default_heat_beta(alpha, multiplier_r(p))?,
    };
    let tgrid = if cfg.tgrid.is_empty() { log_times(0.01, 10.0, 50) } else { cfg.tgrid.clone() };
    let laplacian = SpectralModel::new(f.laplacian_symbol()?)?;
    let reference = f.default_reference()?;
    let u0 = point_mass(&f)?;
    let table = heat_decay(&f, &laplacian, &u0, p, q, &tgrid, &reference, beta)?;
    let mut out = Outcome::default();
    match cfg.format {
        Format::Csv => out.text = table.to_csv(),
        Format::Json => {
            for row in &table.rows {
                let mut v = serde_json::to_value(row)?;
                let obj = v.as_object_mut().expect("row serializes to an object");
                obj.insert("instance".into(), table.instance.clone().into());
                obj.insert("p".into(), format_real(p).into());
                obj.insert("q".into(), format_real(q).into());
                obj.insert("beta".into(), beta.into());
                out.push_line(&serde_json::to_string(&v)?);
            }
        }
    }
    Ok(out)
}

fn sweep_dyadic(cfg: &ExperimentConfig) -> Result<Outcome> {
    let f = cfg.instance_or("cyclic:64")?;
    let s = cfg.s.first().copied().unwrap_or(1.0);
    let reports = dyadic_sweep(&f, s, trials(cfg, 20), cfg.seed)?;
    let mut out = Outcome::default();
    if cfg.format == Format::Csv {
        out.push_line("seed,s,sup_band,full,sup_over_full,widest_window,windows_monotone,window_converged");
    }
    for rep in reports {
        let seed = rep.report.seed.unwrap_or_default();
        if rep.report.is_hard_violation() {
            out.violations.push(seed);
        }
        match cfg.format {
            Format::Json => out.push_line(&serde_json::to_string(&rep)?),
            Format::Csv => out.push_line(&format!(
                "{seed},{},{},{},{},{},{},{}",
                format_real(s),
                format_real(rep.report.lhs),
                format_real(rep.report.rhs),
                format_real(rep.report.ratio),
                format_real(*rep.window_norms.last().unwrap()),
                rep.windows_monotone,
                rep.window_converged
            )),
        }
    }
    Ok(out)
}

fn write_output(out: &Outcome, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, &out.text)?,
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(out.text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn thread_pool() -> Result<Option<rayon::ThreadPool>> {
    let Ok(text) = std::env::var("NCLAB_THREADS") else {
        return Ok(None);
    };
    let n: usize = text
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("NCLAB_THREADS must be a positive integer, got {text:?}")))?;
    if n == 0 {
        return Err(Error::Config("NCLAB_THREADS must be positive".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map(Some)
        .map_err(|e| Error::Config(e.to_string()))
}

/// Resolves and runs a parsed command line, writing the report and returning
/// the process exit code.
pub fn execute(cli: &Cli) -> Result<i32> {
    let (mode, flags) = match &cli.command {
        Command::Verify(f) => (Mode::Verify, f),
        Command::Sweep(f) => (Mode::Sweep, f),
    };
    let cfg = ExperimentConfig::resolve(mode, flags)?;
    let go = || match mode {
        Mode::Verify => run_verify(&cfg),
        Mode::Sweep => run_sweep(&cfg),
    };
    let out = match thread_pool()? {
        Some(pool) => pool.install(go)?,
        None => go()?,
    };
    write_output(&out, cfg.out.as_deref())?;
    if !out.violations.is_empty() {
        let seeds: Vec<String> = out.violations.iter().map(u64::to_string).collect();
        eprintln!("hard violations at seeds: {}", seeds.join(", "));
    }
    Ok(out.exit_code())
}

/// Entry point for the binary.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(args: &[&str]) -> Result<(ExperimentConfig, Outcome)> {
        let cli = Cli::try_parse_from(std::iter::once("nclab").chain(args.iter().copied())).unwrap();
        let (mode, flags) = match &cli.command {
            Command::Verify(f) => (Mode::Verify, f),
            Command::Sweep(f) => (Mode::Sweep, f),
        };
        let c = ExperimentConfig::resolve(mode, flags)?;
        let out = match mode {
            Mode::Verify => run_verify(&c)?,
            Mode::Sweep => run_sweep(&c)?,
        };
        Ok((c, out))
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Outcome::default().exit_code(), EXIT_OK);
        let bad = Outcome { text: String::new(), violations: vec![3, 17] };
        assert_eq!(bad.exit_code(), EXIT_VIOLATION);
    }

    #[test]
    fn grids_parse() {
        assert_eq!(parse_grid("1.25, 1.5,inf").unwrap(), vec![1.25, 1.5, f64::INFINITY]);
        assert_eq!(parse_dims("16..128").unwrap(), vec![16, 32, 64, 128]);
        assert_eq!(parse_dims("3,5").unwrap(), vec![3, 5]);
        let t = parse_tgrid("log:0.01:10:50").unwrap();
        assert_eq!((t.len(), t[0], t[49]), (50, 0.01, 10.0));
        assert_eq!(parse_tgrid("lin:0:1:3").unwrap(), vec![0.0, 0.5, 1.0]);
        assert!(parse_tgrid("log:0:1:3").is_err());
        assert!(parse_grid("x").is_err());
    }

    #[test]
    fn hyp_out_of_range_is_config_error() {
        let e = cfg(&["verify", "--kind", "hyp", "--p", "1.5", "--q", "3.5"]).unwrap_err();
        assert!(matches!(e, Error::InvalidExponent(_)));
    }

    #[test]
    fn multiplier_report_carries_psi_factor() {
        let (_, out) = cfg(&["verify", "--kind", "multiplier-51", "--instance", "group:S3", "--p", "4", "--seed", "7"])
            .unwrap();
        assert_eq!(out.exit_code(), EXIT_OK);
        assert_eq!(out.text.lines().count(), 100);
        assert!(out.text.lines().all(|l| l.contains("psi_inverse_op")));
    }

    #[test]
    fn csv_has_header() {
        let (_, out) =
            cfg(&["verify", "--kind", "hy", "--instance", "cyclic:8", "--p", "1.5,2", "--trials", "3", "--format", "csv"])
                .unwrap();
        let lines: Vec<&str> = out.text.lines().collect();
        assert_eq!(lines[0], InequalityReport::CSV_HEADER);
        assert_eq!(lines.len(), 7);
    }

    #[test]
    fn finiteness_single_case() {
        let (_, out) =
            cfg(&["sweep", "--kind", "finiteness", "--alpha", "1", "--beta", "1", "--r", "2", "--dims", "16..4096"])
                .unwrap();
        assert!(out.text.contains("\"observed\":\"BOUNDED\""));
    }

    #[test]
    fn extra_verify_kinds_pass() {
        for kind in ["axioms", "weak-norm", "submultiplicativity"] {
            let (_, out) = cfg(&["verify", "--kind", kind, "--trials", "5", "--seed", "1"]).unwrap();
            assert_eq!(out.exit_code(), EXIT_OK, "{kind}");
        }
    }

    #[test]
    fn unknown_kind_and_missing_p() {
        assert!(matches!(cfg(&["verify", "--kind", "nope"]), Err(Error::Config(_))));
        assert!(matches!(cfg(&["verify", "--kind", "paley"]), Err(Error::Config(_))));
        assert!(matches!(cfg(&["sweep", "--kind", "nope"]), Err(Error::Config(_))));
        assert!(matches!(cfg(&["verify", "--kind", "hy", "--p", "1.5", "--q", "2"]), Err(Error::Config(_))));
    }

    #[test]
    fn config_file_and_flag_precedence() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.json");
        std::fs::write(&path, r#"{"kind":"hy","instance":"cyclic:8","p":[1.5],"trials":2,"seed":9}"#).unwrap();
        let p = path.to_str().unwrap();
        let (c, _) = cfg(&["verify", "--config", p]).unwrap();
        assert_eq!((c.seed, c.p.clone(), c.trials), (9, vec![1.5], Some(2)));
        let (c, _) = cfg(&["verify", "--config", p, "--seed", "3", "--p", "2"]).unwrap();
        assert_eq!((c.seed, c.p.clone()), (3, vec![2.0]));
        std::fs::write(&path, r#"{"kind":"hy","colour":1}"#).unwrap();
        assert!(matches!(cfg(&["verify", "--config", p]), Err(Error::Config(_))));
    }
}
