//! Scalar Cebysev functional on `[0, 1]`, its four classical bounds, and the
//! scalar Levin-Steckin inequality.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quad::{integrate_scalar, QuadratureRule};
use crate::weights::{Monotonicity, WeightFunction};

const SCALAR_SLACK: f64 = 1e-12;

/// `C(h, g) = int h g - int h * int g` on `[0, 1]`.
pub fn cebysev_functional<H, G>(h: H, g: G, rule: &QuadratureRule) -> Result<f64>
where
    H: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    let ih = integrate_scalar(&h, rule)?;
    let ig = integrate_scalar(&g, rule)?;
    let ihg = integrate_scalar(|t| h(t) * g(t), rule)?;
    Ok(ihg - ih * ig)
}

/// Whatever is known about `h` and `g`; bounds needing missing fields are
/// reported absent.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ScalarMetadata {
    /// `(m, M)` with `m <= h <= M`.
    pub h_range: Option<(f64, f64)>,
    /// `(n, N)` with `n <= g <= N`.
    pub g_range: Option<(f64, f64)>,
    pub h_dinf: Option<f64>,
    pub g_dinf: Option<f64>,
    pub h_d2: Option<f64>,
    pub g_d2: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalarFunctionalReport {
    pub c_value: f64,
    /// `(M - m)(N - n) / 4`.
    pub gruss_bound: Option<f64>,
    /// `(M - m) ||g'||_inf / 8`.
    pub ostrowski_bound: Option<f64>,
    /// `||h'||_inf ||g'||_inf / 12`.
    pub cebysev_bound: Option<f64>,
    /// `||h'||_2 ||g'||_2 / pi^2`.
    pub lupas_bound: Option<f64>,
    pub inputs_digest: String,
}

impl ScalarFunctionalReport {
    pub fn bounds(&self) -> impl Iterator<Item = (&'static str, f64)> + '_ {
        [
            ("gruss", self.gruss_bound),
            ("ostrowski", self.ostrowski_bound),
            ("cebysev", self.cebysev_bound),
            ("lupas", self.lupas_bound),
        ]
        .into_iter()
        .filter_map(|(name, b)| b.map(|b| (name, b)))
    }

    /// Names of computed bounds that `|C|` exceeds by more than `1e-12`.
    pub fn violations(&self) -> Vec<&'static str> {
        self.bounds()
            .filter(|(_, b)| self.c_value.abs() > b + SCALAR_SLACK)
            .map(|(name, _)| name)
            .collect()
    }

    pub fn all_hold(&self) -> bool {
        self.violations().is_empty()
    }
}

pub fn scalar_bounds<H, G>(
    h: H,
    g: G,
    meta: &ScalarMetadata,
    rule: &QuadratureRule,
) -> Result<ScalarFunctionalReport>
where
    H: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    let c_value = cebysev_functional(h, g, rule)?;
    let spread = |r: Option<(f64, f64)>| r.map(|(lo, hi)| hi - lo);
    let gruss_bound = spread(meta.h_range)
        .zip(spread(meta.g_range))
        .map(|(a, b)| 0.25 * a * b);
    let ostrowski_bound = spread(meta.h_range)
        .zip(meta.g_dinf)
        .map(|(a, d)| 0.125 * a * d);
    let cebysev_bound = meta.h_dinf.zip(meta.g_dinf).map(|(a, b)| a * b / 12.0);
    let lupas_bound = meta.h_d2.zip(meta.g_d2).map(|(a, b)| a * b / (PI * PI));

    let mut available = Vec::new();
    if meta.h_range.is_some() {
        available.push("h_range");
    }
    if meta.g_range.is_some() {
        available.push("g_range");
    }
    if meta.h_dinf.is_some() {
        available.push("h'_inf");
    }
    if meta.g_dinf.is_some() {
        available.push("g'_inf");
    }
    if meta.h_d2.is_some() {
        available.push("h'_2");
    }
    if meta.g_d2.is_some() {
        available.push("g'_2");
    }
    Ok(ScalarFunctionalReport {
        c_value,
        gruss_bound,
        ostrowski_bound,
        cebysev_bound,
        lupas_bound,
        inputs_digest: format!("on [0,1] with {}", available.join(", ")),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarLevinSteckin {
    /// `int p * int g - int p g`.
    pub gap: f64,
    pub monotone_class: Monotonicity,
    /// `gap >= -1e-12` for nondecreasing weights, `gap <= 1e-12` otherwise.
    pub holds: bool,
}

/// Scalar Levin-Steckin check for a caller-asserted convex `g`.
pub fn scalar_levin_steckin<G>(
    p: &WeightFunction,
    g: G,
    rule: &QuadratureRule,
) -> Result<ScalarLevinSteckin>
where
    G: Fn(f64) -> f64,
{
    let monotone_class = p.require_valid()?;
    let ip = integrate_scalar(|t| p.eval_unchecked(t), rule)?;
    let ig = integrate_scalar(&g, rule)?;
    let ipg = integrate_scalar(|t| p.eval_unchecked(t) * g(t), rule)?;
    let gap = ip * ig - ipg;
    if !gap.is_finite() {
        return Err(Error::NonFinite {
            context: "scalar Levin-Steckin gap",
        });
    }
    let holds = match monotone_class {
        Monotonicity::NondecreasingOnFirstHalf => gap >= -SCALAR_SLACK,
        Monotonicity::NonincreasingOnFirstHalf => gap <= SCALAR_SLACK,
    };
    Ok(ScalarLevinSteckin {
        gap,
        monotone_class,
        holds,
    })
}
