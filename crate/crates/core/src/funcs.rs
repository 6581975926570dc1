//! Closed catalogue of scalar functions used as `f` in the operator inequalities.
//!
//! Every entry carries its domain and its operator convexity class, so the
//! hypotheses of each checker can be decided mechanically. The exponential is
//! deliberately absent: it is neither operator convex nor operator monotone.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Real interval, possibly unbounded below. Upper end is always `+inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    /// `None` means the whole real line.
    pub lower: Option<f64>,
    pub lower_open: bool,
}

impl Domain {
    pub const REAL_LINE: Domain = Domain {
        lower: None,
        lower_open: true,
    };
    pub const POSITIVE: Domain = Domain {
        lower: Some(0.0),
        lower_open: true,
    };

    /// Margin kept from an open endpoint: `1e-8 * (1 + |endpoint|)`.
    pub fn margin(&self) -> f64 {
        match self.lower {
            Some(lo) if self.lower_open => 1e-8 * (1.0 + lo.abs()),
            _ => 0.0,
        }
    }

    /// True if `t` lies in the domain with the open-endpoint margin respected.
    pub fn contains_with_margin(&self, t: f64) -> bool {
        if !t.is_finite() {
            return false;
        }
        match self.lower {
            None => true,
            Some(lo) if self.lower_open => t >= lo + self.margin(),
            Some(lo) => t >= lo,
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.lower {
            None => write!(f, "(-inf, inf)"),
            Some(lo) if self.lower_open => write!(f, "({lo}, inf)"),
            Some(lo) => write!(f, "[{lo}, inf)"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Convexity {
    OperatorConvex,
    OperatorConcave,
    Neither,
}

impl Convexity {
    pub fn flipped(self) -> Convexity {
        match self {
            Convexity::OperatorConvex => Convexity::OperatorConcave,
            Convexity::OperatorConcave => Convexity::OperatorConvex,
            Convexity::Neither => Convexity::Neither,
        }
    }

    /// +1 for convex, -1 for concave. Multiplying `f` by this sign yields an
    /// operator convex function.
    pub fn sign(self) -> Option<f64> {
        match self {
            Convexity::OperatorConvex => Some(1.0),
            Convexity::OperatorConcave => Some(-1.0),
            Convexity::Neither => None,
        }
    }
}

impl fmt::Display for Convexity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convexity::OperatorConvex => "operator_convex",
            Convexity::OperatorConcave => "operator_concave",
            Convexity::Neither => "neither",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum OperatorFunction {
    /// `t^r`. `power(0)` is the constant 1.
    Power(f64),
    Log,
    /// `t ln t`.
    XLogX,
    /// Alias of `Power(-1.0)`.
    Inverse,
    /// Alias of `Power(2.0)`.
    Square,
    Negate(Box<OperatorFunction>),
}

impl OperatorFunction {
    pub fn negate(self) -> OperatorFunction {
        OperatorFunction::Negate(Box::new(self))
    }

    pub fn domain(&self) -> Domain {
        match self {
            OperatorFunction::Power(r) if *r == 1.0 || *r == 2.0 => Domain::REAL_LINE,
            OperatorFunction::Square => Domain::REAL_LINE,
            OperatorFunction::Power(_)
            | OperatorFunction::Log
            | OperatorFunction::XLogX
            | OperatorFunction::Inverse => Domain::POSITIVE,
            OperatorFunction::Negate(inner) => inner.domain(),
        }
    }

    fn check_domain(&self, t: f64) -> Result<()> {
        let domain = self.domain();
        if domain.contains_with_margin(t) {
            Ok(())
        } else {
            Err(Error::SpectrumOutOfDomain {
                eigenvalue: t,
                domain,
                function: self.to_string(),
            })
        }
    }

    /// Scalar value `f(t)`.
    pub fn eval(&self, t: f64) -> Result<f64> {
        self.check_domain(t)?;
        Ok(self.eval_unchecked(t))
    }

    /// Analytic derivative `f'(t)`.
    pub fn eval_derivative(&self, t: f64) -> Result<f64> {
        self.check_domain(t)?;
        Ok(self.derivative_unchecked(t))
    }

    pub(crate) fn eval_unchecked(&self, t: f64) -> f64 {
        match self {
            OperatorFunction::Power(r) => power(*r, t),
            OperatorFunction::Log => t.ln(),
            OperatorFunction::XLogX => t * t.ln(),
            OperatorFunction::Inverse => 1.0 / t,
            OperatorFunction::Square => t * t,
            OperatorFunction::Negate(inner) => -inner.eval_unchecked(t),
        }
    }

    pub(crate) fn derivative_unchecked(&self, t: f64) -> f64 {
        match self {
            OperatorFunction::Power(r) => power_derivative(*r, t),
            OperatorFunction::Log => 1.0 / t,
            OperatorFunction::XLogX => t.ln() + 1.0,
            OperatorFunction::Inverse => -1.0 / (t * t),
            OperatorFunction::Square => 2.0 * t,
            OperatorFunction::Negate(inner) => -inner.derivative_unchecked(t),
        }
    }

    /// Operator convexity class on the domain.
    ///
    /// `t^r` is operator convex for `r` in `[1, 2]` or `[-1, 0]` and operator
    /// concave for `r` in `[0, 1]`. At the shared endpoints `r = 0` and `r = 1`
    /// (affine or constant) both hold; those report `OperatorConvex`.
    pub fn classify(&self) -> Convexity {
        match self {
            OperatorFunction::Power(r) => classify_power(*r),
            OperatorFunction::Log => Convexity::OperatorConcave,
            OperatorFunction::XLogX => Convexity::OperatorConvex,
            OperatorFunction::Inverse => Convexity::OperatorConvex,
            OperatorFunction::Square => Convexity::OperatorConvex,
            OperatorFunction::Negate(inner) => inner.classify().flipped(),
        }
    }

    /// True for the functions whose second divided differences vanish.
    pub fn is_affine(&self) -> bool {
        match self {
            OperatorFunction::Power(r) => *r == 0.0 || *r == 1.0,
            OperatorFunction::Negate(inner) => inner.is_affine(),
            _ => false,
        }
    }

    pub fn is_log(&self) -> bool {
        matches!(self, OperatorFunction::Log)
    }
}

fn classify_power(r: f64) -> Convexity {
    if (1.0..=2.0).contains(&r) || (-1.0..=0.0).contains(&r) {
        Convexity::OperatorConvex
    } else if (0.0..=1.0).contains(&r) {
        Convexity::OperatorConcave
    } else {
        Convexity::Neither
    }
}

fn power(r: f64, t: f64) -> f64 {
    if r == 0.0 {
        1.0
    } else if r == 1.0 {
        t
    } else if r == 2.0 {
        t * t
    } else if r == -1.0 {
        1.0 / t
    } else {
        t.powf(r)
    }
}

fn power_derivative(r: f64, t: f64) -> f64 {
    if r == 0.0 {
        0.0
    } else if r == 1.0 {
        1.0
    } else if r == 2.0 {
        2.0 * t
    } else if r == -1.0 {
        -1.0 / (t * t)
    } else {
        r * t.powf(r - 1.0)
    }
}

impl fmt::Display for OperatorFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorFunction::Power(r) => write!(f, "power:{r}"),
            OperatorFunction::Log => f.write_str("log"),
            OperatorFunction::XLogX => f.write_str("xlogx"),
            OperatorFunction::Inverse => f.write_str("inverse"),
            OperatorFunction::Square => f.write_str("square"),
            OperatorFunction::Negate(inner) => write!(f, "neg:{inner}"),
        }
    }
}

impl FromStr for OperatorFunction {
    type Err = Error;

    /// Parses `power:<r>`, `log`, `xlogx`, `inverse`, `square` and `neg:<spec>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("neg:") {
            return Ok(rest.parse::<OperatorFunction>()?.negate());
        }
        if let Some(exp) = s.strip_prefix("power:") {
            let r: f64 = exp
                .trim()
                .parse()
                .map_err(|_| Error::InvalidSpec(format!("bad exponent in function spec {s:?}")))?;
            if !r.is_finite() {
                return Err(Error::InvalidSpec(format!("non-finite exponent in {s:?}")));
            }
            return Ok(OperatorFunction::Power(r));
        }
        match s {
            "log" => Ok(OperatorFunction::Log),
            "xlogx" => Ok(OperatorFunction::XLogX),
            "inverse" => Ok(OperatorFunction::Inverse),
            "square" => Ok(OperatorFunction::Square),
            _ => Err(Error::InvalidSpec(format!("unknown function spec {s:?}"))),
        }
    }
}
