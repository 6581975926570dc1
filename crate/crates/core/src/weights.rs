//! Symmetric weights `p` on `[0, 1]` and the quantities each bound consumes:
//! `p(0)`, `p(1/2)`, `int p`, `||p'||_inf`, `||p'||_2`.

use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Points in the dyadic validation grid on `[0, 1]`.
pub const VALIDATION_GRID: usize = 1025;
const GRID_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum WeightKind {
    Constant(f64),
    /// `t (1 - t)`.
    Bump,
    /// `|t - 1/2|`.
    Vee,
    /// Piecewise-linear interpolant of `(t, p)` samples.
    Tabulated(Arc<Table>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub t: Vec<f64>,
    pub p: Vec<f64>,
}

impl Table {
    pub fn new(t: Vec<f64>, p: Vec<f64>) -> Result<Self> {
        if t.len() != p.len() || t.len() < 2 {
            return Err(Error::InvalidWeight(
                "table needs at least two (t, p) rows".into(),
            ));
        }
        if t.iter().chain(&p).any(|v| !v.is_finite()) {
            return Err(Error::InvalidWeight("table has non-finite entries".into()));
        }
        if !t.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidWeight(
                "table t column must be strictly ascending".into(),
            ));
        }
        if t[0] != 0.0 || *t.last().unwrap() != 1.0 {
            return Err(Error::InvalidWeight(
                "table must cover t = 0 and t = 1".into(),
            ));
        }
        Ok(Table { t, p })
    }

    /// Reads a CSV with header `t,p`.
    pub fn from_csv(path: &Path) -> Result<Self> {
        let io_err = |e: &dyn fmt::Display| Error::Io {
            path: path.to_path_buf(),
            message: e.to_string(),
        };
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_path(path)
            .map_err(|e| io_err(&e))?;
        let headers = reader.headers().map_err(|e| io_err(&e))?.clone();
        if headers.len() != 2 || &headers[0] != "t" || &headers[1] != "p" {
            return Err(Error::InvalidWeight(format!(
                "expected header `t,p`, found `{}`",
                headers.iter().collect::<Vec<_>>().join(",")
            )));
        }
        let mut t = Vec::new();
        let mut p = Vec::new();
        for (line, record) in reader.records().enumerate() {
            let record = record.map_err(|e| io_err(&e))?;
            let parse = |s: &str| {
                s.parse::<f64>().map_err(|_| {
                    Error::InvalidWeight(format!("row {}: cannot parse {s:?}", line + 2))
                })
            };
            t.push(parse(&record[0])?);
            p.push(parse(&record[1])?);
        }
        Table::new(t, p)
    }

    fn interpolate(&self, x: f64) -> f64 {
        let idx = self.t.partition_point(|&ti| ti <= x);
        if idx == 0 {
            return self.p[0];
        }
        if idx >= self.t.len() {
            return *self.p.last().unwrap();
        }
        let (t0, t1) = (self.t[idx - 1], self.t[idx]);
        let (p0, p1) = (self.p[idx - 1], self.p[idx]);
        p0 + (p1 - p0) * (x - t0) / (t1 - t0)
    }

    fn slopes(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.t
            .windows(2)
            .zip(self.p.windows(2))
            .map(|(t, p)| ((p[1] - p[0]) / (t[1] - t[0]), t[1] - t[0]))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Monotonicity {
    NondecreasingOnFirstHalf,
    NonincreasingOnFirstHalf,
}

impl Monotonicity {
    /// +1 for nondecreasing, -1 for nonincreasing. `sign * p` is nondecreasing.
    pub fn sign(self) -> f64 {
        match self {
            Monotonicity::NondecreasingOnFirstHalf => 1.0,
            Monotonicity::NonincreasingOnFirstHalf => -1.0,
        }
    }
}

impl fmt::Display for Monotonicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Monotonicity::NondecreasingOnFirstHalf => "nondecreasing_on_first_half",
            Monotonicity::NonincreasingOnFirstHalf => "nonincreasing_on_first_half",
        })
    }
}

/// A weight together with its derived bound ingredients. Construction never
/// fails on asymmetric or non-monotone input; those defects are carried in
/// [`WeightFunction::validation`] and make every checker reject the weight.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightFunction {
    pub kind: WeightKind,
    pub monotone_class: Option<Monotonicity>,
    pub differentiable: bool,
    pub p0: f64,
    pub p_half: f64,
    pub dinf_norm: Option<f64>,
    pub d2_norm: Option<f64>,
    pub integral: f64,
    pub validation: WeightValidation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightValidation {
    pub symmetry_residual: f64,
    pub symmetric: bool,
    pub monotone_class: Option<Monotonicity>,
    pub nonnegative: bool,
    pub p0: f64,
    pub p_half: f64,
    pub integral: f64,
    pub dinf_norm: Option<f64>,
    pub d2_norm: Option<f64>,
    pub valid: bool,
}

impl WeightFunction {
    pub fn new(kind: WeightKind) -> Self {
        let differentiable = !matches!(kind, WeightKind::Vee);
        let (p0, p_half, integral) = match &kind {
            WeightKind::Constant(c) => (*c, *c, *c),
            WeightKind::Bump => (0.0, 0.25, 1.0 / 6.0),
            WeightKind::Vee => (0.5, 0.0, 0.25),
            WeightKind::Tabulated(table) => {
                // exact integral of the piecewise-linear interpolant
                let integral = table
                    .t
                    .windows(2)
                    .zip(table.p.windows(2))
                    .map(|(t, p)| 0.5 * (t[1] - t[0]) * (p[0] + p[1]))
                    .sum();
                (table.p[0], table.interpolate(0.5), integral)
            }
        };
        let (dinf_norm, d2_norm) = match analytic_derivative_norms(&kind) {
            Some((a, b)) => (Some(a), Some(b)),
            None => (None, None),
        };
        let mut w = WeightFunction {
            kind,
            monotone_class: None,
            differentiable,
            p0,
            p_half,
            dinf_norm,
            d2_norm,
            integral,
            validation: WeightValidation {
                symmetry_residual: 0.0,
                symmetric: false,
                monotone_class: None,
                nonnegative: false,
                p0,
                p_half,
                integral,
                dinf_norm,
                d2_norm,
                valid: false,
            },
        };
        w.validation = validate(&w);
        w.monotone_class = w.validation.monotone_class;
        w
    }

    pub fn constant(c: f64) -> Self {
        WeightFunction::new(WeightKind::Constant(c))
    }

    pub fn bump() -> Self {
        WeightFunction::new(WeightKind::Bump)
    }

    pub fn vee() -> Self {
        WeightFunction::new(WeightKind::Vee)
    }

    pub fn tabulated(table: Table) -> Self {
        WeightFunction::new(WeightKind::Tabulated(Arc::new(table)))
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        eval_weight(self, t)
    }

    pub(crate) fn eval_unchecked(&self, t: f64) -> f64 {
        match &self.kind {
            WeightKind::Constant(c) => *c,
            WeightKind::Bump => t * (1.0 - t),
            WeightKind::Vee => (t - 0.5).abs(),
            WeightKind::Tabulated(table) => table.interpolate(t),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validation.valid
    }

    /// Validated monotone class, or `InvalidWeight` with the reason.
    pub fn require_valid(&self) -> Result<Monotonicity> {
        if !self.validation.symmetric {
            return Err(Error::InvalidWeight(format!(
                "{self} is not symmetric (residual {:e})",
                self.validation.symmetry_residual
            )));
        }
        self.monotone_class
            .ok_or_else(|| Error::InvalidWeight(format!("{self} is not monotone on [0, 1/2]")))
    }
}

impl fmt::Display for WeightFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            WeightKind::Constant(c) => write!(f, "constant:{c}"),
            WeightKind::Bump => f.write_str("bump"),
            WeightKind::Vee => f.write_str("vee"),
            WeightKind::Tabulated(table) => write!(f, "table[{} rows]", table.t.len()),
        }
    }
}

impl FromStr for WeightFunction {
    type Err = Error;

    /// Parses `constant:<c>`, `bump`, `vee`, `table:<path>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(c) = s.strip_prefix("constant:") {
            let c: f64 = c
                .trim()
                .parse()
                .map_err(|_| Error::InvalidSpec(format!("bad constant in weight spec {s:?}")))?;
            if !c.is_finite() {
                return Err(Error::InvalidSpec(format!("non-finite constant in {s:?}")));
            }
            return Ok(WeightFunction::constant(c));
        }
        if let Some(path) = s.strip_prefix("table:") {
            return Ok(WeightFunction::tabulated(Table::from_csv(Path::new(path))?));
        }
        match s {
            "bump" => Ok(WeightFunction::bump()),
            "vee" => Ok(WeightFunction::vee()),
            _ => Err(Error::InvalidSpec(format!("unknown weight spec {s:?}"))),
        }
    }
}

pub fn eval_weight(p: &WeightFunction, t: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::ParameterOutOfRange {
            name: "t",
            value: t,
            lo: 0.0,
            hi: 1.0,
        });
    }
    Ok(p.eval_unchecked(t))
}

fn analytic_derivative_norms(kind: &WeightKind) -> Option<(f64, f64)> {
    match kind {
        WeightKind::Constant(_) => Some((0.0, 0.0)),
        // p' = 1 - 2t: sup 1, int (1-2t)^2 = 1/3
        WeightKind::Bump => Some((1.0, (1.0f64 / 3.0).sqrt())),
        WeightKind::Vee => None,
        WeightKind::Tabulated(table) => {
            // slopes of the interpolant: one-sided differences on the samples
            let mut sup = 0.0f64;
            let mut sq = 0.0;
            for (slope, width) in table.slopes() {
                sup = sup.max(slope.abs());
                sq += slope * slope * width;
            }
            Some((sup, sq.sqrt()))
        }
    }
}

/// `(||p'||_inf, ||p'||_2)`.
pub fn derivative_norms(p: &WeightFunction) -> Result<(f64, f64)> {
    if !p.differentiable {
        return Err(Error::NotDifferentiable(p.to_string()));
    }
    match (p.dinf_norm, p.d2_norm) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(Error::NotDifferentiable(p.to_string())),
    }
}

/// Grid-based check of symmetry, monotone class on `[0, 1/2]` and sign.
pub fn validate(p: &WeightFunction) -> WeightValidation {
    let n = VALIDATION_GRID - 1;
    let grid: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();
    let values: Vec<f64> = grid.iter().map(|&t| p.eval_unchecked(t)).collect();

    let symmetry_residual = (0..=n)
        .map(|i| (values[i] - values[n - i]).abs())
        .fold(0.0f64, f64::max);
    let symmetric = symmetry_residual <= GRID_TOL;

    let first_half = &values[..=n / 2];
    let nondecreasing = first_half.windows(2).all(|w| w[1] - w[0] >= -GRID_TOL);
    let nonincreasing = first_half.windows(2).all(|w| w[1] - w[0] <= GRID_TOL);
    // A constant weight is both; report the nondecreasing orientation.
    let monotone_class = if nondecreasing {
        Some(Monotonicity::NondecreasingOnFirstHalf)
    } else if nonincreasing {
        Some(Monotonicity::NonincreasingOnFirstHalf)
    } else {
        None
    };
    let nonnegative = values.iter().all(|&v| v >= 0.0);

    WeightValidation {
        symmetry_residual,
        symmetric,
        monotone_class,
        nonnegative,
        p0: p.p0,
        p_half: p.p_half,
        integral: p.integral,
        dinf_norm: p.dinf_norm,
        d2_norm: p.d2_norm,
        valid: symmetric && monotone_class.is_some(),
    }
}

/// Smallest weight value on the validation grid, with its location.
pub(crate) fn grid_minimum(p: &WeightFunction) -> (f64, f64) {
    let n = VALIDATION_GRID - 1;
    (0..=n)
        .map(|i| {
            let t = i as f64 / n as f64;
            (t, p.eval_unchecked(t))
        })
        .fold((0.0, f64::INFINITY), |best, cur| {
            if cur.1 < best.1 {
                cur
            } else {
                best
            }
        })
}
