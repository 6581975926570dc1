//! Operator inequalities along the segment `[A, B]` and their scalar
//! counterparts.
//!
//! Every operator checker reports a nonnegative `gap` and an upper `bound`
//! and certifies `0 <= gap <= bound` in the Loewner order. Concave functions
//! and weights that are nonincreasing on `[0, 1/2]` are handled by flipping
//! the sign of `f` or `p`, which turns each case into the convex,
//! nondecreasing one.

mod operator;
mod scalar;
mod suite;

use std::f64::consts::PI;
use std::fmt;

pub use operator::{
    check_cebysev_reverse, check_fejer, check_gateaux_reverse, check_hermite_hadamard,
    check_ls_operator, check_lupas_reverse, check_ostrowski_reverse, Checker, DerivativeRoute,
    PreparedPath, SymmetrizedPath,
};
pub use scalar::{
    cebysev_functional, scalar_bounds, scalar_levin_steckin, ScalarFunctionalReport,
    ScalarLevinSteckin, ScalarMetadata,
};
pub use suite::{run_example_suite, SUITE_POWERS};

use crate::matcore::{LoewnerVerdict, SymMatrix};

pub(crate) const INV_PI_SQ: f64 = 1.0 / (PI * PI);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TheoremId {
    HermiteHadamard,
    Fejer,
    LevinSteckin,
    OstrowskiReverse,
    GateauxReverse,
    CebysevReverse,
    LupasReverse,
    SegmentMonotonicity,
}

impl TheoremId {
    pub const ALL: [TheoremId; 8] = [
        TheoremId::HermiteHadamard,
        TheoremId::Fejer,
        TheoremId::LevinSteckin,
        TheoremId::OstrowskiReverse,
        TheoremId::GateauxReverse,
        TheoremId::CebysevReverse,
        TheoremId::LupasReverse,
        TheoremId::SegmentMonotonicity,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::HermiteHadamard => "hermite_hadamard",
            TheoremId::Fejer => "fejer",
            TheoremId::LevinSteckin => "levin_steckin",
            TheoremId::OstrowskiReverse => "ostrowski_reverse",
            TheoremId::GateauxReverse => "gateaux_reverse",
            TheoremId::CebysevReverse => "cebysev_reverse",
            TheoremId::LupasReverse => "lupas_reverse",
            TheoremId::SegmentMonotonicity => "segment_monotonicity",
        }
    }

    pub fn parse(s: &str) -> Option<TheoremId> {
        TheoremId::ALL.into_iter().find(|t| t.as_str() == s)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Signs applied to `f` and `p` to reach the convex, nondecreasing case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Orientation {
    /// +1 for operator convex `f`, -1 for operator concave.
    pub function_sign: f64,
    /// +1 for `p` nondecreasing on `[0, 1/2]`, -1 for nonincreasing.
    pub weight_sign: f64,
}

impl Orientation {
    pub const CONVEX_NONDECREASING: Orientation = Orientation {
        function_sign: 1.0,
        weight_sign: 1.0,
    };

    /// Sign multiplying `int p * int phi - int p phi` to give the gap.
    pub fn gap_sign(&self) -> f64 {
        self.function_sign * self.weight_sign
    }

    pub fn describe_gap(&self) -> &'static str {
        if self.gap_sign() > 0.0 {
            "int p * int phi - int p phi"
        } else {
            "int p phi - int p * int phi"
        }
    }
}

/// Outcome of one operator inequality `0 <= gap <= bound`.
#[derive(Debug, Clone, PartialEq)]
pub struct IneqReport {
    pub theorem: TheoremId,
    pub label: String,
    pub orientation: Orientation,
    pub gap: SymMatrix,
    pub bound: SymMatrix,
    /// Scalar prefactor in front of the operator bracket of the bound.
    pub coefficient: f64,
    /// Quadrature value of `int p`, when the inequality involves a weight.
    pub weight_integral: Option<f64>,
    /// `0 <= gap`.
    pub lower_verdict: LoewnerVerdict,
    /// `gap <= bound`.
    pub upper_verdict: LoewnerVerdict,
    /// Further links of the chain, e.g. the weaker Lupas-type bound.
    pub extra_verdicts: Vec<(String, LoewnerVerdict)>,
    /// `lambda_max(gap) / lambda_max(bound)` when the denominator is positive.
    pub tightness: Option<f64>,
    /// Relative max-norm disagreement between two derivative routes, when
    /// the bound was cross-checked.
    pub derivative_crosscheck: Option<f64>,
    pub instance: String,
}

impl IneqReport {
    pub fn pass(&self) -> bool {
        self.lower_verdict.holds
            && self.upper_verdict.holds
            && self.extra_verdicts.iter().all(|(_, v)| v.holds)
    }

    /// Smallest `lambda_min` over all verdicts of the chain.
    pub fn worst_margin(&self) -> f64 {
        self.extra_verdicts
            .iter()
            .map(|(_, v)| v.min_eig_of_difference)
            .fold(
                self.lower_verdict
                    .min_eig_of_difference
                    .min(self.upper_verdict.min_eig_of_difference),
                f64::min,
            )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem_ids_round_trip() {
        for t in TheoremId::ALL {
            assert_eq!(TheoremId::parse(t.as_str()), Some(t));
        }
        assert_eq!(TheoremId::parse("nope"), None);
    }

    #[test]
    fn orientation_signs() {
        let o = Orientation {
            function_sign: -1.0,
            weight_sign: -1.0,
        };
        assert_eq!(o.gap_sign(), 1.0);
        assert_eq!(o.describe_gap(), "int p * int phi - int p phi");
        let o = Orientation {
            function_sign: -1.0,
            weight_sign: 1.0,
        };
        assert_eq!(o.describe_gap(), "int p phi - int p * int phi");
    }
}
