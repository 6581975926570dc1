//! Directional (Gateaux) derivatives of catalogue matrix functions.
//!
//! Three independent routes are provided: the Daleckii-Krein divided
//! difference formula in the eigenbasis of the base point, a central
//! difference quotient, and, for the logarithm only, the resolvent integral
//! `int_0^inf (s + T)^-1 S (s + T)^-1 ds` evaluated with Cholesky inverses.

use crate::error::{Error, Result};
use crate::funcs::{Convexity, OperatorFunction};
use crate::matcore::{
    apply_fn, eigh, inverse_spd, loewner_leq, segment_point, LoewnerVerdict, SymMatrix,
};
use crate::quad::{integrate_semi_infinite_matrix, SemiInfiniteRule};

/// Divided differences switch to `f'(midpoint)` below this relative gap.
pub const CONFLUENT_THRESHOLD: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeMethod {
    DaleckiiKrein,
    ClosedForm,
    LogIntegral,
    FiniteDifference,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DirectionalDerivative {
    pub value: SymMatrix,
    pub method: DerivativeMethod,
    pub base_point: SymMatrix,
    pub direction: SymMatrix,
}

fn divided_difference(f: &OperatorFunction, a: f64, b: f64) -> f64 {
    if (a - b).abs() <= CONFLUENT_THRESHOLD * (1.0 + a.abs().max(b.abs())) {
        f.derivative_unchecked(0.5 * (a + b))
    } else {
        (f.eval_unchecked(a) - f.eval_unchecked(b)) / (a - b)
    }
}

/// `nabla f_T(S)` by the Daleckii-Krein formula.
pub fn gateaux(
    f: &OperatorFunction,
    t: &SymMatrix,
    s: &SymMatrix,
) -> Result<DirectionalDerivative> {
    t.check_same_dim(s)?;
    let value = gateaux_value(f, t, s)?;
    Ok(DirectionalDerivative {
        value,
        method: DerivativeMethod::DaleckiiKrein,
        base_point: t.clone(),
        direction: s.clone(),
    })
}

pub(crate) fn gateaux_value(
    f: &OperatorFunction,
    t: &SymMatrix,
    s: &SymMatrix,
) -> Result<SymMatrix> {
    let dec = eigh(t)?;
    for &l in &dec.eigenvalues {
        f.eval(l)?;
    }
    let n = t.dim();
    let rotated = s.congruence_transpose(&dec.eigenvectors);
    let lam = &dec.eigenvalues;
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let v = divided_difference(f, lam[i], lam[j]) * rotated.get(i, j);
            data[i * n + j] = v;
            data[j * n + i] = v;
        }
    }
    let inner = SymMatrix::new(n, data)?;
    Ok(inner.congruence(&dec.eigenvectors))
}

/// Step used by the finite-difference oracle: `1e-5 (1 + ||T||_2) / (1 + ||S||_2)`.
pub fn default_fd_step(t: &SymMatrix, s: &SymMatrix) -> Result<f64> {
    Ok(1e-5 * (1.0 + t.spectral_norm()?) / (1.0 + s.spectral_norm()?))
}

/// Central difference `(f(T + hS) - f(T - hS)) / 2h`.
pub fn gateaux_fd_oracle(
    f: &OperatorFunction,
    t: &SymMatrix,
    s: &SymMatrix,
    step: f64,
) -> Result<SymMatrix> {
    t.check_same_dim(s)?;
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::ParameterOutOfRange {
            name: "step",
            value: step,
            lo: 0.0,
            hi: f64::INFINITY,
        });
    }
    let plus = apply_fn(f, &t.axpy(step, s))?;
    let minus = apply_fn(f, &t.axpy(-step, s))?;
    Ok(&(&plus - &minus) * (0.5 / step))
}

/// `nabla ln_T(S) = int_0^inf (s + T)^-1 S (s + T)^-1 ds`.
pub fn gateaux_log_integral(
    t: &SymMatrix,
    s: &SymMatrix,
    rule: &SemiInfiniteRule,
) -> Result<SymMatrix> {
    t.check_same_dim(s)?;
    // positive definiteness with the log domain margin
    let margin = crate::funcs::Domain::POSITIVE.margin();
    inverse_spd(&t.axpy(-margin, &SymMatrix::identity(t.dim())))?;
    let n = t.dim();
    integrate_semi_infinite_matrix(
        |shift| {
            let resolvent = inverse_spd(&t.axpy(shift, &SymMatrix::identity(n)))?;
            Ok(resolvent.sandwich(s))
        },
        rule,
    )
}

/// Closed forms where one exists: `TS + ST` for the square, `-T^-1 S T^-1`
/// for the inverse, `S` for `power(1)`. Returns `None` for other functions.
pub fn gateaux_closed_form(
    f: &OperatorFunction,
    t: &SymMatrix,
    s: &SymMatrix,
) -> Result<Option<SymMatrix>> {
    t.check_same_dim(s)?;
    let value = match f {
        OperatorFunction::Square => t.anticommutator(s),
        OperatorFunction::Power(r) if *r == 2.0 => t.anticommutator(s),
        OperatorFunction::Inverse => -&inverse_spd(t)?.sandwich(s),
        OperatorFunction::Power(r) if *r == -1.0 => -&inverse_spd(t)?.sandwich(s),
        OperatorFunction::Power(r) if *r == 1.0 => s.clone(),
        OperatorFunction::Negate(inner) => {
            return Ok(gateaux_closed_form(inner, t, s)?.map(|v| -&v));
        }
        _ => return Ok(None),
    };
    Ok(Some(value))
}

/// `nabla f` at the segment point `(1 - t) A + t B` along `B - A`.
pub fn path_derivative(
    f: &OperatorFunction,
    a: &SymMatrix,
    b: &SymMatrix,
    t: f64,
) -> Result<SymMatrix> {
    let point = segment_point(a, b, t)?;
    gateaux_value(f, &point, &(b - a))
}

/// One comparison `nabla f at from <= nabla f at to`; `from = 0` and `to = 1`
/// stand for the endpoint derivatives at `A` and `B`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonotonicityStep {
    pub from: f64,
    pub to: f64,
    pub verdict: LoewnerVerdict,
}

/// Uniform grid `{0.1, ..., 0.9}`.
pub fn default_monotonicity_grid() -> Vec<f64> {
    (1..=9).map(|k| k as f64 / 10.0).collect()
}

/// Checks that `t -> nabla f_{(1-t)A+tB}(B - A)` is nondecreasing in the
/// Loewner order on the grid, and sandwiched between the endpoint derivatives.
pub fn check_segment_monotonicity(
    f: &OperatorFunction,
    a: &SymMatrix,
    b: &SymMatrix,
    grid: &[f64],
    tol_scale: f64,
) -> Result<Vec<MonotonicityStep>> {
    a.check_same_dim(b)?;
    if f.classify() != Convexity::OperatorConvex {
        return Err(Error::Hypothesis(format!(
            "segment monotonicity needs an operator convex function, {f} is {}",
            f.classify()
        )));
    }
    if grid.is_empty()
        || !grid.windows(2).all(|w| w[0] < w[1])
        || grid.iter().any(|&t| !(t > 0.0 && t < 1.0))
    {
        return Err(Error::InvalidSpec(
            "monotonicity grid must be strictly ascending inside (0, 1)".into(),
        ));
    }
    let mut points = Vec::with_capacity(grid.len() + 2);
    points.push(0.0);
    points.extend_from_slice(grid);
    points.push(1.0);
    let derivs = points
        .iter()
        .map(|&t| path_derivative(f, a, b, t))
        .collect::<Result<Vec<_>>>()?;
    points
        .windows(2)
        .zip(derivs.windows(2))
        .map(|(t, d)| {
            Ok(MonotonicityStep {
                from: t[0],
                to: t[1],
                verdict: loewner_leq(&d[0], &d[1], tol_scale)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::DEFAULT_TOL_SCALE;
    use std::f64::consts::LN_2;

    fn swap() -> SymMatrix {
        SymMatrix::from_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap()
    }

    #[test]
    fn square_is_anticommutator() {
        let t =
            SymMatrix::from_rows(&[&[1.0, 2.0, 0.5], &[2.0, -1.0, 0.3], &[0.5, 0.3, 4.0]]).unwrap();
        let s = SymMatrix::from_rows(&[&[0.2, -1.0, 0.0], &[-1.0, 3.0, 1.5], &[0.0, 1.5, 0.7]])
            .unwrap();
        let expected = t.anticommutator(&s);
        let dk = gateaux(&OperatorFunction::Square, &t, &s).unwrap();
        assert!(dk.value.max_diff(&expected) < 1e-12);
        assert_eq!(dk.method, DerivativeMethod::DaleckiiKrein);
        // central differences are exact for quadratics up to roundoff
        for step in [1e-3, 0.1, 1.0] {
            let fd = gateaux_fd_oracle(&OperatorFunction::Square, &t, &s, step).unwrap();
            assert!(fd.max_diff(&expected) < 1e-10, "step {step}");
        }
    }

    #[test]
    fn inverse_examples() {
        let t = SymMatrix::diag(&[1.0, 2.0]);
        let s = SymMatrix::identity(2);
        let expected = SymMatrix::diag(&[-1.0, -0.25]);
        let dk = gateaux(&OperatorFunction::Inverse, &t, &s).unwrap();
        assert!(dk.value.max_diff(&expected) < 1e-15);
        let fd = gateaux_fd_oracle(&OperatorFunction::Inverse, &t, &s, 1e-5).unwrap();
        assert!(fd.max_diff(&expected) < 1e-9);
    }

    #[test]
    fn log_examples() {
        let t = SymMatrix::diag(&[1.0, 2.0]);
        let expected = SymMatrix::from_rows(&[&[0.0, LN_2], &[LN_2, 0.0]]).unwrap();
        let dk = gateaux(&OperatorFunction::Log, &t, &swap()).unwrap();
        assert!(dk.value.max_diff(&expected) < 1e-15);
        let fd = gateaux_fd_oracle(&OperatorFunction::Log, &t, &swap(), 1e-5).unwrap();
        assert!(fd.max_diff(&expected) < 1e-9);
        let rule = SemiInfiniteRule::default();
        let li = gateaux_log_integral(&t, &swap(), &rule).unwrap();
        assert!(li.max_diff(&expected) < 1e-12);

        let li =
            gateaux_log_integral(&SymMatrix::identity(2), &SymMatrix::identity(2), &rule).unwrap();
        assert!(li.max_diff(&SymMatrix::identity(2)) < 1e-12);
        let li = gateaux_log_integral(&t, &SymMatrix::identity(2), &rule).unwrap();
        assert!(li.max_diff(&SymMatrix::diag(&[1.0, 0.5])) < 1e-12);
    }

    #[test]
    fn log_integral_rejects_indefinite() {
        let rule = SemiInfiniteRule::default();
        let t = SymMatrix::diag(&[1.0, -0.5]);
        assert!(matches!(
            gateaux_log_integral(&t, &swap(), &rule),
            Err(Error::NotPositiveDefinite)
        ));
    }

    #[test]
    fn closed_forms_agree_with_daleckii_krein() {
        let t = SymMatrix::from_rows(&[&[2.0, 0.3], &[0.3, 1.5]]).unwrap();
        let s = SymMatrix::from_rows(&[&[0.1, -0.7], &[-0.7, 0.4]]).unwrap();
        for f in [
            OperatorFunction::Square,
            OperatorFunction::Inverse,
            OperatorFunction::Power(1.0),
            OperatorFunction::Inverse.negate(),
        ] {
            let cf = gateaux_closed_form(&f, &t, &s).unwrap().unwrap();
            let dk = gateaux(&f, &t, &s).unwrap().value;
            assert!(cf.max_diff(&dk) < 1e-13, "{f}");
        }
        assert!(gateaux_closed_form(&OperatorFunction::Log, &t, &s)
            .unwrap()
            .is_none());
    }

    #[test]
    fn confluent_eigenvalues_use_derivative() {
        let eps = 1e-9;
        let t = SymMatrix::diag(&[2.0, 2.0 + eps]);
        let dk = gateaux(&OperatorFunction::Log, &t, &swap()).unwrap();
        assert!((dk.value.get(0, 1) - 1.0 / (2.0 + 0.5 * eps)).abs() < 1e-15);
    }

    #[test]
    fn out_of_domain() {
        let t = SymMatrix::diag(&[-1.0, 2.0]);
        assert!(matches!(
            gateaux(&OperatorFunction::Log, &t, &swap()),
            Err(Error::SpectrumOutOfDomain { .. })
        ));
        assert!(gateaux_fd_oracle(&OperatorFunction::Log, &t, &swap(), 1e-5).is_err());
    }

    #[test]
    fn monotonicity_examples() {
        let grid = default_monotonicity_grid();
        let a = SymMatrix::diag(&[1.0, 3.0]);
        let steps =
            check_segment_monotonicity(&OperatorFunction::Square, &a, &a, &grid, DEFAULT_TOL_SCALE)
                .unwrap();
        assert_eq!(steps.len(), 10);
        assert!(steps
            .iter()
            .all(|s| s.verdict.holds && s.verdict.min_eig_of_difference == 0.0));

        let b = SymMatrix::diag(&[2.0, 2.0]);
        let steps =
            check_segment_monotonicity(&OperatorFunction::Square, &a, &b, &grid, DEFAULT_TOL_SCALE)
                .unwrap();
        assert!(steps.iter().all(|s| s.verdict.holds));

        // inverse along I -> 2I: -(1+t)^-2 I, increasing
        let i = SymMatrix::identity(2);
        let two = SymMatrix::scalar(2, 2.0);
        for &t in &grid {
            let d = path_derivative(&OperatorFunction::Inverse, &i, &two, t).unwrap();
            let expected = SymMatrix::scalar(2, -1.0 / (1.0 + t).powi(2));
            assert!(d.max_diff(&expected) < 1e-14);
        }
        let steps =
            check_segment_monotonicity(&OperatorFunction::Inverse, &i, &two, &grid, 1e-9).unwrap();
        assert!(steps
            .iter()
            .all(|s| s.verdict.holds && s.verdict.min_eig_of_difference > 0.0));
    }

    #[test]
    fn monotonicity_rejects_concave_and_bad_grid() {
        let i = SymMatrix::identity(2);
        let two = SymMatrix::scalar(2, 2.0);
        assert!(
            check_segment_monotonicity(&OperatorFunction::Log, &i, &two, &[0.5], 1e-9).is_err()
        );
        assert!(check_segment_monotonicity(
            &OperatorFunction::Inverse,
            &i,
            &two,
            &[0.0, 0.5],
            1e-9
        )
        .is_err());
    }
}
