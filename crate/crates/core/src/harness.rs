//! Seeded instance generation, campaigns over `(f, p, A, B)` and report
//! emission.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::frechet::{check_segment_monotonicity, default_monotonicity_grid};
use crate::funcs::{Convexity, OperatorFunction};
use crate::ineq::{Checker, DerivativeRoute, IneqReport, TheoremId};
use crate::matcore::{SymMatrix, DEFAULT_TOL_SCALE};
use crate::quad::QuadratureRule;
use crate::weights::WeightFunction;

pub const MAX_DIM: usize = 64;
pub const TOL_ENV_VAR: &str = "OPINEQ_TOL";
/// Eigenvalues are drawn from `[a + eta, b - eta]` with `eta = EIGEN_MARGIN * (b - a)`.
pub const EIGEN_MARGIN: f64 = 0.05;

#[derive(Debug, Clone, PartialEq)]
pub struct InstanceSpec {
    pub dim: usize,
    pub interval: (f64, f64),
    pub seed: u64,
    pub function: OperatorFunction,
    pub weight: WeightFunction,
    /// `(points_per_panel, panels)`.
    pub quad: (usize, usize),
}

impl InstanceSpec {
    pub fn new(
        dim: usize,
        interval: (f64, f64),
        seed: u64,
        function: OperatorFunction,
        weight: WeightFunction,
    ) -> Self {
        InstanceSpec {
            dim,
            interval,
            seed,
            function,
            weight,
            quad: (
                crate::quad::DEFAULT_POINTS_PER_PANEL,
                crate::quad::DEFAULT_PANELS,
            ),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 || self.dim > MAX_DIM {
            return Err(Error::ParameterOutOfRange {
                name: "dim",
                value: self.dim as f64,
                lo: 1.0,
                hi: MAX_DIM as f64,
            });
        }
        let (a, b) = self.interval;
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidSpec(format!(
                "spectrum interval needs finite a < b, got ({a}, {b})"
            )));
        }
        if self.quad.0 == 0 || self.quad.1 == 0 {
            return Err(Error::InvalidSpec(
                "quadrature sizes must be positive".into(),
            ));
        }
        Ok(())
    }

    pub fn eta(&self) -> f64 {
        EIGEN_MARGIN * (self.interval.1 - self.interval.0)
    }

    pub fn rule(&self) -> Result<QuadratureRule> {
        QuadratureRule::new(self.quad.0, self.quad.1)
    }

    pub fn describe(&self) -> String {
        format!(
            "dim={} interval={}:{} seed={} fn={} weight={} quad={}x{}",
            self.dim,
            self.interval.0,
            self.interval.1,
            self.seed,
            self.function,
            self.weight,
            self.quad.0,
            self.quad.1
        )
    }
}

/// Haar-like orthogonal matrix from Gram-Schmidt on a Gaussian matrix, row-major.
fn random_orthogonal(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    // columns stored contiguously while orthogonalizing
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        // two passes of modified Gram-Schmidt
        for _ in 0..2 {
            for c in &cols {
                let dot: f64 = c.iter().zip(&v).map(|(x, y)| x * y).sum();
                v.iter_mut().zip(c).for_each(|(vi, ci)| *vi -= dot * ci);
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-8 {
            continue;
        }
        v.iter_mut().for_each(|x| *x /= norm);
        cols.push(v);
    }
    let mut q = vec![0.0; n * n];
    for (j, c) in cols.iter().enumerate() {
        for (i, x) in c.iter().enumerate() {
            q[i * n + j] = *x;
        }
    }
    q
}

fn random_symmetric(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> SymMatrix {
    let eigenvalues: Vec<f64> = (0..n).map(|_| rng.random_range(lo..=hi)).collect();
    let q = random_orthogonal(rng, n);
    SymMatrix::diag(&eigenvalues).congruence(&q)
}

/// `A = Q1 D1 Q1^T`, `B = Q2 D2 Q2^T` with spectra in `[a + eta, b - eta]`.
pub fn random_pair(spec: &InstanceSpec) -> Result<(SymMatrix, SymMatrix)> {
    spec.validate()?;
    let eta = spec.eta();
    let (lo, hi) = (spec.interval.0 + eta, spec.interval.1 - eta);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let a = random_symmetric(&mut rng, spec.dim, lo, hi);
    let b = random_symmetric(&mut rng, spec.dim, lo, hi);
    Ok((a, b))
}

/// Which checkers a campaign runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremSelection(pub BTreeSet<TheoremId>);

impl TheoremSelection {
    pub fn all() -> Self {
        TheoremSelection(TheoremId::ALL.into_iter().collect())
    }

    /// `all` or a comma separated list of theorem ids.
    pub fn parse(s: &str) -> Result<Self> {
        if s.trim() == "all" {
            return Ok(Self::all());
        }
        s.split(',')
            .map(|id| {
                TheoremId::parse(id.trim())
                    .ok_or_else(|| Error::InvalidSpec(format!("unknown theorem id '{id}'")))
            })
            .collect::<Result<BTreeSet<_>>>()
            .map(TheoremSelection)
    }

    pub fn contains(&self, t: TheoremId) -> bool {
        self.0.contains(&t)
    }
}

/// Result of one checker on one instance.
#[derive(Debug, Clone, PartialEq)]
pub enum CheckOutcome {
    Passed {
        margin: f64,
        /// `margin / (1 + ||bound||_2)`.
        relative_margin: f64,
        tightness: Option<f64>,
    },
    Failed {
        reason: String,
        margin: Option<f64>,
    },
    Skipped(String),
}

/// `tol_scale` from `OPINEQ_TOL`, or the default when unset.
pub fn tol_scale_from_env() -> Result<f64> {
    match std::env::var(TOL_ENV_VAR) {
        Ok(raw) => match raw.trim().parse::<f64>() {
            Ok(v) if v.is_finite() && v >= 0.0 => Ok(v),
            _ => Err(Error::InvalidSpec(format!(
                "{TOL_ENV_VAR} must be a nonnegative number, got '{raw}'"
            ))),
        },
        Err(_) => Ok(DEFAULT_TOL_SCALE),
    }
}

/// Errors meaning "the hypotheses of this theorem do not apply here".
fn is_inapplicable(e: &Error) -> bool {
    matches!(
        e,
        Error::Hypothesis(_)
            | Error::UnsupportedConvexity { .. }
            | Error::NotDifferentiable(_)
            | Error::InvalidWeight(_)
            | Error::NegativeWeight { .. }
    )
}

fn outcome_of_report(report: Result<IneqReport>) -> CheckOutcome {
    match report {
        Ok(r) => {
            let margin = r.worst_margin();
            if r.pass() {
                let bound_norm = r.bound.spectral_norm().unwrap_or(f64::NAN);
                CheckOutcome::Passed {
                    margin,
                    relative_margin: margin / (1.0 + bound_norm),
                    tightness: r.tightness,
                }
            } else {
                let failing: Vec<&str> = [
                    ("0 <= gap", r.lower_verdict.holds),
                    ("gap <= bound", r.upper_verdict.holds),
                ]
                .into_iter()
                .chain(r.extra_verdicts.iter().map(|(n, v)| (n.as_str(), v.holds)))
                .filter(|(_, holds)| !holds)
                .map(|(n, _)| n)
                .collect();
                CheckOutcome::Failed {
                    reason: format!("verdict failed: {}", failing.join(", ")),
                    margin: Some(margin),
                }
            }
        }
        Err(e) => outcome_of_error(e),
    }
}

fn outcome_of_error(e: Error) -> CheckOutcome {
    if is_inapplicable(&e) {
        CheckOutcome::Skipped(e.to_string())
    } else {
        CheckOutcome::Failed {
            reason: format!("{}: {e}", e.kind()),
            margin: None,
        }
    }
}

fn segment_outcome(
    f: &OperatorFunction,
    a: &SymMatrix,
    b: &SymMatrix,
    tol_scale: f64,
) -> CheckOutcome {
    // concave f: the derivative of -f is the one that increases
    let f = match f.classify() {
        Convexity::OperatorConcave => f.clone().negate(),
        _ => f.clone(),
    };
    match check_segment_monotonicity(&f, a, b, &default_monotonicity_grid(), tol_scale) {
        Ok(steps) => {
            let margin = steps
                .iter()
                .map(|s| s.verdict.min_eig_of_difference)
                .fold(f64::INFINITY, f64::min);
            match steps.iter().find(|s| !s.verdict.holds) {
                None => CheckOutcome::Passed {
                    margin,
                    relative_margin: margin,
                    tightness: None,
                },
                Some(s) => CheckOutcome::Failed {
                    reason: format!("derivative decreases between t={} and t={}", s.from, s.to),
                    margin: Some(margin),
                },
            }
        }
        Err(e) => outcome_of_error(e),
    }
}

/// Runs every selected checker on one instance, in `TheoremId` order.
pub fn run_instance(
    spec: &InstanceSpec,
    theorems: &TheoremSelection,
    tol_scale: f64,
) -> Vec<(TheoremId, CheckOutcome)> {
    let setup = spec.rule().and_then(|rule| {
        let (a, b) = random_pair(spec)?;
        Ok((Checker::new(rule).with_tol_scale(tol_scale), a, b))
    });
    let (checker, a, b) = match setup {
        Ok(s) => s,
        Err(e) => {
            let outcome = outcome_of_error(e);
            return theorems.0.iter().map(|&t| (t, outcome.clone())).collect();
        }
    };
    let path = checker.prepare(&spec.function, &a, &b);
    let p = &spec.weight;
    theorems
        .0
        .iter()
        .map(|&t| {
            if t == TheoremId::SegmentMonotonicity {
                return (t, segment_outcome(&spec.function, &a, &b, tol_scale));
            }
            let path = match &path {
                Ok(path) => path,
                Err(e) => return (t, outcome_of_error(e.clone())),
            };
            let report = match t {
                TheoremId::HermiteHadamard => checker.hermite_hadamard(path),
                TheoremId::Fejer => checker.fejer(path, p),
                TheoremId::LevinSteckin => checker.levin_steckin(path, p),
                TheoremId::OstrowskiReverse => checker.ostrowski_reverse(path, p),
                TheoremId::GateauxReverse => {
                    checker.gateaux_reverse(path, p, DerivativeRoute::DaleckiiKrein)
                }
                TheoremId::CebysevReverse => {
                    checker.cebysev_reverse(path, p, DerivativeRoute::DaleckiiKrein)
                }
                TheoremId::LupasReverse => checker.lupas_reverse(path, p),
                TheoremId::SegmentMonotonicity => unreachable!(),
            };
            (t, outcome_of_report(report))
        })
        .collect()
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct TheoremStats {
    /// Instances where the checker ran, i.e. `passes + failures`.
    pub instances: usize,
    pub passes: usize,
    pub skipped: usize,
    pub worst_margin: Option<f64>,
    pub worst_relative_margin: Option<f64>,
    /// Sorted ascending.
    pub tightness: Vec<f64>,
}

impl TheoremStats {
    pub fn tightness_min(&self) -> Option<f64> {
        self.tightness.first().copied()
    }

    pub fn tightness_max(&self) -> Option<f64> {
        self.tightness.last().copied()
    }

    pub fn tightness_median(&self) -> Option<f64> {
        let n = self.tightness.len();
        match n {
            0 => None,
            _ if n % 2 == 1 => Some(self.tightness[n / 2]),
            _ => Some(0.5 * (self.tightness[n / 2 - 1] + self.tightness[n / 2])),
        }
    }

    fn record_margin(&mut self, margin: f64, relative: f64) {
        self.worst_margin = Some(self.worst_margin.map_or(margin, |m| m.min(margin)));
        self.worst_relative_margin = Some(
            self.worst_relative_margin
                .map_or(relative, |m| m.min(relative)),
        );
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FailureRecord {
    pub seed: u64,
    pub theorem: TheoremId,
    pub instance: String,
    pub reason: String,
    pub margin: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CampaignReport {
    pub instances: usize,
    pub theorems: BTreeMap<TheoremId, TheoremStats>,
    /// Sorted by seed, theorem, instance and reason.
    pub failures: Vec<FailureRecord>,
}

impl CampaignReport {
    pub fn success(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn exit_code(&self) -> i32 {
        if self.success() {
            0
        } else {
            1
        }
    }

    fn absorb(&mut self, spec: &InstanceSpec, outcomes: Vec<(TheoremId, CheckOutcome)>) {
        self.instances += 1;
        for (theorem, outcome) in outcomes {
            let stats = self.theorems.entry(theorem).or_default();
            match outcome {
                CheckOutcome::Passed {
                    margin,
                    relative_margin,
                    tightness,
                } => {
                    stats.instances += 1;
                    stats.passes += 1;
                    stats.record_margin(margin, relative_margin);
                    if let Some(t) = tightness.filter(|t| t.is_finite()) {
                        stats.tightness.push(t);
                    }
                }
                CheckOutcome::Failed { reason, margin } => {
                    stats.instances += 1;
                    if let Some(m) = margin {
                        stats.record_margin(m, m);
                    }
                    self.failures.push(FailureRecord {
                        seed: spec.seed,
                        theorem,
                        instance: spec.describe(),
                        reason,
                        margin,
                    });
                }
                CheckOutcome::Skipped(_) => stats.skipped += 1,
            }
        }
    }

    fn finalize(&mut self) {
        for stats in self.theorems.values_mut() {
            stats.tightness.sort_by(f64::total_cmp);
        }
        self.failures.sort_by(|x, y| {
            (x.seed, x.theorem, &x.instance, &x.reason).cmp(&(
                y.seed,
                y.theorem,
                &y.instance,
                &y.reason,
            ))
        });
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignConfig {
    pub tol_scale: f64,
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            tol_scale: DEFAULT_TOL_SCALE,
            jobs: None,
        }
    }
}

/// Runs a campaign with the tolerance taken from `OPINEQ_TOL`.
pub fn run_campaign(specs: &[InstanceSpec], theorems: &TheoremSelection) -> Result<CampaignReport> {
    let config = CampaignConfig {
        tol_scale: tol_scale_from_env()?,
        jobs: None,
    };
    run_campaign_with(specs, theorems, &config)
}

pub fn run_campaign_with(
    specs: &[InstanceSpec],
    theorems: &TheoremSelection,
    config: &CampaignConfig,
) -> Result<CampaignReport> {
    let work = || -> Vec<Vec<(TheoremId, CheckOutcome)>> {
        specs
            .par_iter()
            .map(|s| run_instance(s, theorems, config.tol_scale))
            .collect()
    };
    let outcomes = match config.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidSpec(format!("thread pool: {e}")))?
            .install(work),
        None => work(),
    };
    let mut report = CampaignReport::default();
    for (spec, out) in specs.iter().zip(outcomes) {
        report.absorb(spec, out);
    }
    report.finalize();
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            _ => Err(Error::InvalidSpec(format!("unknown report format '{s}'"))),
        }
    }
}

/// 17 significant digits, `null` for non-finite values.
fn json_float(x: Option<f64>) -> String {
    match x {
        Some(v) if v.is_finite() => format!("{v:.16e}"),
        _ => "null".to_string(),
    }
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

pub fn render_json(report: &CampaignReport) -> String {
    let mut out = String::new();
    write!(out, "{{\"instances\":{},\"theorems\":{{", report.instances).unwrap();
    for (i, (id, s)) in report.theorems.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write!(
            out,
            "{}:{{\"instances\":{},\"passes\":{},\"skipped\":{},\"worst_margin\":{},\
             \"tightness\":{{\"min\":{},\"median\":{},\"max\":{}}}}}",
            json_string(id.as_str()),
            s.instances,
            s.passes,
            s.skipped,
            json_float(s.worst_margin),
            json_float(s.tightness_min()),
            json_float(s.tightness_median()),
            json_float(s.tightness_max()),
        )
        .unwrap();
    }
    out.push_str("},\"failures\":[");
    for (i, f) in report.failures.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write!(
            out,
            "{{\"seed\":{},\"theorem_id\":{},\"instance\":{},\"reason\":{},\"margin\":{}}}",
            f.seed,
            json_string(f.theorem.as_str()),
            json_string(&f.instance),
            json_string(&f.reason),
            json_float(f.margin),
        )
        .unwrap();
    }
    out.push_str("]}");
    out
}

pub const CSV_HEADER: [&str; 7] = [
    "theorem_id",
    "instances",
    "passes",
    "worst_margin",
    "tightness_min",
    "tightness_median",
    "tightness_max",
];

pub fn render_csv(report: &CampaignReport) -> String {
    let float = |x: Option<f64>| match x {
        Some(v) if v.is_finite() => format!("{v:.16e}"),
        _ => String::new(),
    };
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for (id, s) in &report.theorems {
        w.write_record([
            id.as_str().to_string(),
            s.instances.to_string(),
            s.passes.to_string(),
            float(s.worst_margin),
            float(s.tightness_min()),
            float(s.tightness_median()),
            float(s.tightness_max()),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

pub fn render_report(report: &CampaignReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => render_json(report),
        ReportFormat::Csv => render_csv(report),
    }
}

pub fn emit_report(report: &CampaignReport, format: ReportFormat, path: &Path) -> Result<()> {
    std::fs::write(path, render_report(report, format)).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}
