//! The worked examples for powers, the inverse and the logarithm, all with
//! the weight `p(t) = t(1 - t)`.

use super::{Checker, DerivativeRoute, IneqReport};
use crate::error::{Error, Result};
use crate::funcs::OperatorFunction;
use crate::matcore::{inverse_spd, SymMatrix};
use crate::quad::QuadratureRule;
use crate::weights::WeightFunction;

/// Exponents used for the power examples, one from each operator convex range.
pub const SUITE_POWERS: [f64; 3] = [-1.0, 1.5, 2.0];

fn labelled(mut report: IneqReport, label: String) -> IneqReport {
    report.label = label;
    report
}

/// Runs every worked example on `(A, B)`. Both must be positive definite.
pub fn run_example_suite(
    a: &SymMatrix,
    b: &SymMatrix,
    rule: &QuadratureRule,
) -> Result<Vec<IneqReport>> {
    a.check_same_dim(b)?;
    for m in [a, b] {
        inverse_spd(m).map_err(|_| Error::NotPositiveDefinite)?;
    }
    let checker = Checker::new(rule.clone());
    let p = WeightFunction::bump();
    let mut out = Vec::new();

    for r in SUITE_POWERS {
        let f = OperatorFunction::Power(r);
        let path = checker.prepare(&f, a, b)?;
        out.push(labelled(
            checker.levin_steckin(&path, &p)?,
            format!("power:{r} levin_steckin"),
        ));
        out.push(labelled(
            checker.ostrowski_reverse(&path, &p)?,
            format!("power:{r} ostrowski_reverse"),
        ));
    }

    let path = checker.prepare(&OperatorFunction::Inverse, a, b)?;
    out.push(labelled(
        checker.gateaux_reverse(&path, &p, DerivativeRoute::ClosedForm)?,
        "inverse gateaux_reverse closed_form".into(),
    ));
    out.push(labelled(
        checker.cebysev_reverse(&path, &p, DerivativeRoute::ClosedForm)?,
        "inverse cebysev_reverse closed_form".into(),
    ));
    out.push(labelled(
        checker.lupas_reverse(&path, &p)?,
        "inverse lupas_reverse".into(),
    ));

    let path = checker.prepare(&OperatorFunction::Log, a, b)?;
    out.push(labelled(
        checker.levin_steckin(&path, &p)?,
        "log levin_steckin".into(),
    ));
    out.push(labelled(
        checker.ostrowski_reverse(&path, &p)?,
        "log ostrowski_reverse".into(),
    ));
    out.push(labelled(
        checker.gateaux_reverse(&path, &p, DerivativeRoute::LogIntegral)?,
        "log gateaux_reverse resolvent_integral".into(),
    ));
    out.push(labelled(
        checker.cebysev_reverse(&path, &p, DerivativeRoute::LogIntegral)?,
        "log cebysev_reverse resolvent_integral".into(),
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_example_from_suite() {
        let a = SymMatrix::diag(&[1.0, 3.0]);
        let b = SymMatrix::diag(&[2.0, 2.0]);
        let reports = run_example_suite(&a, &b, &QuadratureRule::default()).unwrap();
        assert_eq!(reports.len(), 13);
        assert!(reports.iter().all(|r| r.pass()));
        let sq = reports
            .iter()
            .find(|r| r.label == "power:2 levin_steckin")
            .unwrap();
        assert!(sq.gap.max_diff(&SymMatrix::scalar(2, 1.0 / 180.0)) < 1e-14);
        assert_eq!(sq.coefficient, 1.0 / 16.0);
    }

    #[test]
    fn inverse_scalar_instance() {
        let i = SymMatrix::identity(3);
        let two = SymMatrix::scalar(3, 2.0);
        let reports = run_example_suite(&i, &two, &QuadratureRule::default()).unwrap();
        let inv = reports
            .iter()
            .find(|r| r.label == "inverse gateaux_reverse closed_form")
            .unwrap();
        assert_eq!(inv.coefficient, 1.0 / 64.0);
        assert!(inv.bound.max_diff(&SymMatrix::scalar(3, 0.75 / 64.0)) < 1e-15);
        assert!(inv.pass());
    }

    #[test]
    fn equal_endpoints_give_zero() {
        let a = SymMatrix::from_rows(&[&[2.0, 0.3], &[0.3, 1.0]]).unwrap();
        for r in run_example_suite(&a, &a, &QuadratureRule::default()).unwrap() {
            assert!(r.gap.max_abs() < 1e-12, "{}", r.label);
            assert!(r.bound.max_abs() < 1e-12, "{}", r.label);
        }
    }

    #[test]
    fn rejects_indefinite() {
        let a = SymMatrix::diag(&[1.0, -1.0]);
        let b = SymMatrix::identity(2);
        assert_eq!(
            run_example_suite(&a, &b, &QuadratureRule::default()).unwrap_err(),
            Error::NotPositiveDefinite
        );
    }
}
