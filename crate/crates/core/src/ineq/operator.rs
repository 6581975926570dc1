use super::{IneqReport, Orientation, TheoremId, INV_PI_SQ};
use crate::error::{Error, Result};
use crate::frechet::{gateaux_closed_form, gateaux_log_integral, gateaux_value, path_derivative};
use crate::funcs::OperatorFunction;
use crate::matcore::{apply_fn, loewner_leq, segment_point, SymMatrix, DEFAULT_TOL_SCALE};
use crate::quad::{weighted_sum, QuadratureRule, SemiInfiniteRule};
use crate::weights::{derivative_norms, grid_minimum, Monotonicity, WeightFunction};

/// How the endpoint derivatives `nabla f_A(B - A)` and `nabla f_B(B - A)` are
/// obtained for the derivative-based bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeRoute {
    DaleckiiKrein,
    /// Only for the square, the inverse and `power(1)`.
    ClosedForm,
    /// Only for the logarithm.
    LogIntegral,
}

/// `phi(t) = f((1 - t) A + t B)` sampled at the quadrature nodes, together
/// with the endpoint and midpoint values every bound needs.
#[derive(Debug, Clone)]
pub struct PreparedPath {
    pub f: OperatorFunction,
    pub a: SymMatrix,
    pub b: SymMatrix,
    pub function_sign: f64,
    pub samples: Vec<SymMatrix>,
    pub f_a: SymMatrix,
    pub f_b: SymMatrix,
    pub f_mid: SymMatrix,
    /// `int_0^1 phi`.
    pub mean: SymMatrix,
    rule: QuadratureRule,
}

impl PreparedPath {
    pub fn new(
        f: &OperatorFunction,
        a: &SymMatrix,
        b: &SymMatrix,
        rule: &QuadratureRule,
    ) -> Result<Self> {
        a.check_same_dim(b)?;
        let function_sign = f
            .classify()
            .sign()
            .ok_or_else(|| Error::UnsupportedConvexity {
                function: f.to_string(),
            })?;
        let samples = rule
            .nodes
            .iter()
            .map(|&t| apply_fn(f, &segment_point(a, b, t)?))
            .collect::<Result<Vec<_>>>()?;
        let mean = weighted_sum(rule.weights.iter().copied().zip(&samples))?;
        Ok(PreparedPath {
            f: f.clone(),
            a: a.clone(),
            b: b.clone(),
            function_sign,
            f_a: apply_fn(f, a)?,
            f_b: apply_fn(f, b)?,
            f_mid: apply_fn(f, &segment_point(a, b, 0.5)?)?,
            samples,
            mean,
            rule: rule.clone(),
        })
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    pub fn rule(&self) -> &QuadratureRule {
        &self.rule
    }

    /// `sign * ((f(A) + f(B)) / 2 - f((A + B) / 2))`, positive semidefinite.
    pub fn jensen_bracket(&self) -> SymMatrix {
        let avg = &(&self.f_a + &self.f_b) * 0.5;
        &(&avg - &self.f_mid) * self.function_sign
    }

    /// `(int p, int p * int phi - int p phi)` by the path's quadrature rule.
    pub fn weighted_difference(&self, p: &WeightFunction) -> Result<(f64, SymMatrix)> {
        let pw: Vec<f64> = self
            .rule
            .iter()
            .map(|(t, w)| w * p.eval_unchecked(t))
            .collect();
        let int_p: f64 = pw.iter().sum();
        let int_p_phi = weighted_sum(pw.iter().copied().zip(&self.samples))?;
        Ok((int_p, (&self.mean * int_p).axpy(-1.0, &int_p_phi)))
    }

    /// `int p phi`.
    pub fn weighted_integral(&self, p: &WeightFunction) -> Result<SymMatrix> {
        weighted_sum(
            self.rule
                .iter()
                .map(|(t, w)| w * p.eval_unchecked(t))
                .zip(&self.samples),
        )
    }

    fn describe(&self, p: Option<&WeightFunction>) -> String {
        let weight = p.map(|p| format!(" p={p}")).unwrap_or_default();
        format!(
            "f={}{} dim={} quad={}x{}",
            self.f,
            weight,
            self.dim(),
            self.rule.points_per_panel,
            self.rule.panels
        )
    }
}

/// `t -> (phi(t) + phi(1 - t)) / 2`.
#[derive(Debug, Clone)]
pub struct SymmetrizedPath {
    pub f: OperatorFunction,
    pub a: SymMatrix,
    pub b: SymMatrix,
}

impl SymmetrizedPath {
    pub fn new(f: &OperatorFunction, a: &SymMatrix, b: &SymMatrix) -> Result<Self> {
        a.check_same_dim(b)?;
        Ok(SymmetrizedPath {
            f: f.clone(),
            a: a.clone(),
            b: b.clone(),
        })
    }

    pub fn eval(&self, t: f64) -> Result<SymMatrix> {
        let left = apply_fn(&self.f, &segment_point(&self.a, &self.b, t)?)?;
        let right = apply_fn(&self.f, &segment_point(&self.a, &self.b, 1.0 - t)?)?;
        Ok(&(&left + &right) * 0.5)
    }
}

/// Quadrature rules and the PSD tolerance shared by all checkers.
#[derive(Debug, Clone)]
pub struct Checker {
    pub rule: QuadratureRule,
    pub semi_infinite: SemiInfiniteRule,
    pub tol_scale: f64,
}

impl Default for Checker {
    fn default() -> Self {
        Checker::new(QuadratureRule::default())
    }
}

fn require_nondecreasing(p: &WeightFunction, theorem: TheoremId) -> Result<()> {
    match p.require_valid()? {
        Monotonicity::NondecreasingOnFirstHalf => Ok(()),
        Monotonicity::NonincreasingOnFirstHalf => Err(Error::Hypothesis(format!(
            "{theorem} needs a weight nondecreasing on [0, 1/2], {p} is nonincreasing"
        ))),
    }
}

impl Checker {
    pub fn new(rule: QuadratureRule) -> Self {
        Checker {
            rule,
            semi_infinite: SemiInfiniteRule::default(),
            tol_scale: DEFAULT_TOL_SCALE,
        }
    }

    pub fn with_tol_scale(mut self, tol_scale: f64) -> Self {
        self.tol_scale = tol_scale;
        self
    }

    pub fn with_semi_infinite(mut self, rule: SemiInfiniteRule) -> Self {
        self.semi_infinite = rule;
        self
    }

    pub fn prepare(
        &self,
        f: &OperatorFunction,
        a: &SymMatrix,
        b: &SymMatrix,
    ) -> Result<PreparedPath> {
        PreparedPath::new(f, a, b, &self.rule)
    }

    #[allow(clippy::too_many_arguments)]
    pub(crate) fn finish(
        &self,
        theorem: TheoremId,
        label: String,
        orientation: Orientation,
        gap: SymMatrix,
        bound: SymMatrix,
        coefficient: f64,
        weight_integral: Option<f64>,
        instance: String,
    ) -> Result<IneqReport> {
        let zero = SymMatrix::zeros(gap.dim());
        let lower_verdict = loewner_leq(&zero, &gap, self.tol_scale)?;
        let upper_verdict = loewner_leq(&gap, &bound, self.tol_scale)?;
        let bound_top = bound.max_eigenvalue()?;
        let tightness = if bound_top > 0.0 {
            Some(gap.max_eigenvalue()? / bound_top)
        } else {
            None
        };
        Ok(IneqReport {
            theorem,
            label,
            orientation,
            gap,
            bound,
            coefficient,
            weight_integral,
            lower_verdict,
            upper_verdict,
            extra_verdicts: Vec::new(),
            tightness,
            derivative_crosscheck: None,
            instance,
        })
    }

    /// `f((A+B)/2) <= int phi <= (f(A) + f(B))/2`, reversed for concave `f`.
    /// Reported as `gap = int phi - f(mid)` against `bound = avg - f(mid)`.
    pub fn hermite_hadamard(&self, path: &PreparedPath) -> Result<IneqReport> {
        let s = path.function_sign;
        let gap = &(&path.mean - &path.f_mid) * s;
        let bound = path.jensen_bracket();
        self.finish(
            TheoremId::HermiteHadamard,
            format!("{} hermite_hadamard", path.f),
            Orientation {
                function_sign: s,
                weight_sign: 1.0,
            },
            gap,
            bound,
            1.0,
            None,
            path.describe(None),
        )
    }

    /// Weighted chain `(int p) f(mid) <= int p phi <= (int p) avg` for a
    /// nonnegative symmetric `p`.
    pub fn fejer(&self, path: &PreparedPath, p: &WeightFunction) -> Result<IneqReport> {
        if !p.validation.symmetric {
            return Err(Error::InvalidWeight(format!("{p} is not symmetric")));
        }
        let (at, value) = grid_minimum(p);
        if value < 0.0 {
            return Err(Error::NegativeWeight { at, value });
        }
        let s = path.function_sign;
        let (int_p, _) = path.weighted_difference(p)?;
        let int_p_phi = path.weighted_integral(p)?;
        let gap = &int_p_phi.axpy(-int_p, &path.f_mid) * s;
        let bound = &path.jensen_bracket() * int_p;
        self.finish(
            TheoremId::Fejer,
            format!("{} fejer", path.f),
            Orientation {
                function_sign: s,
                weight_sign: 1.0,
            },
            gap,
            bound,
            int_p,
            Some(int_p),
            path.describe(Some(p)),
        )
    }

    /// Levin-Steckin gap against `(1/4) |p(1/2) - p(0)|` times the Jensen
    /// bracket, in all four convexity/monotonicity orientations.
    pub fn levin_steckin(&self, path: &PreparedPath, p: &WeightFunction) -> Result<IneqReport> {
        let monotone = p.require_valid()?;
        let orientation = Orientation {
            function_sign: path.function_sign,
            weight_sign: monotone.sign(),
        };
        let (int_p, raw) = path.weighted_difference(p)?;
        let gap = &raw * orientation.gap_sign();
        let coefficient = 0.25 * orientation.weight_sign * (p.p_half - p.p0);
        let bound = &path.jensen_bracket() * coefficient;
        self.finish(
            TheoremId::LevinSteckin,
            format!("{} levin_steckin", path.f),
            orientation,
            gap,
            bound,
            coefficient,
            Some(int_p),
            path.describe(Some(p)),
        )
    }

    /// Gap against `(1/8) ||p'||_inf` times the Jensen bracket.
    pub fn ostrowski_reverse(&self, path: &PreparedPath, p: &WeightFunction) -> Result<IneqReport> {
        require_nondecreasing(p, TheoremId::OstrowskiReverse)?;
        let (dinf, _) = derivative_norms(p)?;
        let orientation = Orientation {
            function_sign: path.function_sign,
            weight_sign: 1.0,
        };
        let (int_p, raw) = path.weighted_difference(p)?;
        let coefficient = 0.125 * dinf;
        self.finish(
            TheoremId::OstrowskiReverse,
            format!("{} ostrowski_reverse", path.f),
            orientation,
            &raw * orientation.gap_sign(),
            &path.jensen_bracket() * coefficient,
            coefficient,
            Some(int_p),
            path.describe(Some(p)),
        )
    }

    /// `sign * (nabla f_B(B - A) - nabla f_A(B - A))` and, for routes other
    /// than Daleckii-Krein, the relative disagreement with it.
    pub fn derivative_bracket(
        &self,
        path: &PreparedPath,
        route: DerivativeRoute,
    ) -> Result<(SymMatrix, Option<f64>)> {
        let dir = &path.b - &path.a;
        let dk_a = gateaux_value(&path.f, &path.a, &dir)?;
        let dk_b = gateaux_value(&path.f, &path.b, &dir)?;
        let (d_a, d_b, crosscheck) = match route {
            DerivativeRoute::DaleckiiKrein => (dk_a, dk_b, None),
            DerivativeRoute::ClosedForm => {
                let missing =
                    || Error::Hypothesis(format!("no closed-form derivative for {}", path.f));
                let d_a = gateaux_closed_form(&path.f, &path.a, &dir)?.ok_or_else(missing)?;
                let d_b = gateaux_closed_form(&path.f, &path.b, &dir)?.ok_or_else(missing)?;
                let check =
                    relative_disagreement(&d_a, &dk_a).max(relative_disagreement(&d_b, &dk_b));
                (d_a, d_b, Some(check))
            }
            DerivativeRoute::LogIntegral => {
                if !path.f.is_log() {
                    return Err(Error::Hypothesis(format!(
                        "the resolvent integral route is specific to log, not {}",
                        path.f
                    )));
                }
                let d_a = gateaux_log_integral(&path.a, &dir, &self.semi_infinite)?;
                let d_b = gateaux_log_integral(&path.b, &dir, &self.semi_infinite)?;
                let check =
                    relative_disagreement(&d_a, &dk_a).max(relative_disagreement(&d_b, &dk_b));
                (d_a, d_b, Some(check))
            }
        };
        Ok((&(&d_b - &d_a) * path.function_sign, crosscheck))
    }

    /// Gap against `(1/16)(p(1/2) - p(0))` times the derivative bracket.
    pub fn gateaux_reverse(
        &self,
        path: &PreparedPath,
        p: &WeightFunction,
        route: DerivativeRoute,
    ) -> Result<IneqReport> {
        require_nondecreasing(p, TheoremId::GateauxReverse)?;
        let orientation = Orientation {
            function_sign: path.function_sign,
            weight_sign: 1.0,
        };
        let (int_p, raw) = path.weighted_difference(p)?;
        let (bracket, crosscheck) = self.derivative_bracket(path, route)?;
        let coefficient = (p.p_half - p.p0) / 16.0;
        let mut report = self.finish(
            TheoremId::GateauxReverse,
            format!("{} gateaux_reverse", path.f),
            orientation,
            &raw * orientation.gap_sign(),
            &bracket * coefficient,
            coefficient,
            Some(int_p),
            path.describe(Some(p)),
        )?;
        report.derivative_crosscheck = crosscheck;
        Ok(report)
    }

    /// Gap against `(1/24) ||p'||_inf` times the derivative bracket.
    pub fn cebysev_reverse(
        &self,
        path: &PreparedPath,
        p: &WeightFunction,
        route: DerivativeRoute,
    ) -> Result<IneqReport> {
        require_nondecreasing(p, TheoremId::CebysevReverse)?;
        let (dinf, _) = derivative_norms(p)?;
        let orientation = Orientation {
            function_sign: path.function_sign,
            weight_sign: 1.0,
        };
        let (int_p, raw) = path.weighted_difference(p)?;
        let (bracket, crosscheck) = self.derivative_bracket(path, route)?;
        let coefficient = dinf / 24.0;
        let mut report = self.finish(
            TheoremId::CebysevReverse,
            format!("{} cebysev_reverse", path.f),
            orientation,
            &raw * orientation.gap_sign(),
            &bracket * coefficient,
            coefficient,
            Some(int_p),
            path.describe(Some(p)),
        )?;
        report.derivative_crosscheck = crosscheck;
        Ok(report)
    }

    /// `(int ||D(t) - D(1-t)||^2)^(1/2)` and `(int ||D(t)||^2)^(1/2)` where
    /// `D(t)` is the derivative along the segment and `||.||` the spectral norm.
    pub fn derivative_norm_integrals(&self, path: &PreparedPath) -> Result<(f64, f64)> {
        let mut diff_sq = 0.0;
        let mut plain_sq = 0.0;
        for (t, w) in self.rule.iter() {
            let d = path_derivative(&path.f, &path.a, &path.b, t)?;
            let mirrored = path_derivative(&path.f, &path.a, &path.b, 1.0 - t)?;
            let nd = (&d - &mirrored).spectral_norm()?;
            let n = d.spectral_norm()?;
            diff_sq += w * nd * nd;
            plain_sq += w * n * n;
        }
        Ok((diff_sq.sqrt(), plain_sq.sqrt()))
    }

    /// Gap against `(1/(2 pi^2)) ||p'||_2 (int ||D(t) - D(1-t)||^2)^(1/2) I`,
    /// with the weaker `(1/pi^2) ||p'||_2 (int ||D(t)||^2)^(1/2) I` as an
    /// extra link of the chain.
    pub fn lupas_reverse(&self, path: &PreparedPath, p: &WeightFunction) -> Result<IneqReport> {
        require_nondecreasing(p, TheoremId::LupasReverse)?;
        let (_, d2) = derivative_norms(p)?;
        let orientation = Orientation {
            function_sign: path.function_sign,
            weight_sign: 1.0,
        };
        let (int_p, raw) = path.weighted_difference(p)?;
        let (diff_norm, plain_norm) = self.derivative_norm_integrals(path)?;
        let coefficient = 0.5 * INV_PI_SQ * d2;
        let tight = coefficient * diff_norm;
        let weak = INV_PI_SQ * d2 * plain_norm;
        let n = path.dim();
        let mut report = self.finish(
            TheoremId::LupasReverse,
            format!("{} lupas_reverse", path.f),
            orientation,
            &raw * orientation.gap_sign(),
            SymMatrix::scalar(n, tight),
            coefficient,
            Some(int_p),
            path.describe(Some(p)),
        )?;
        report.extra_verdicts.push((
            "tight <= weak".to_string(),
            loewner_leq(
                &SymMatrix::scalar(n, tight),
                &SymMatrix::scalar(n, weak),
                self.tol_scale,
            )?,
        ));
        Ok(report)
    }
}

pub(crate) fn relative_disagreement(x: &SymMatrix, reference: &SymMatrix) -> f64 {
    x.max_diff(reference) / (1.0 + reference.max_abs())
}

/// Hermite-Hadamard chain with the default tolerance.
pub fn check_hermite_hadamard(
    f: &OperatorFunction,
    a: &SymMatrix,
    b: &SymMatrix,
    rule: &QuadratureRule,
) -> Result<IneqReport> {
    let checker = Checker::new(rule.clone());
    checker.hermite_hadamard(&checker.prepare(f, a, b)?)
}

/// Weighted Hermite-Hadamard (Fejer) chain; `p` must be nonnegative.
pub fn check_fejer(
    f: &OperatorFunction,
    p: &WeightFunction,
    a: &SymMatrix,
    b: &SymMatrix,
    rule: &QuadratureRule,
) -> Result<IneqReport> {
    let checker = Checker::new(rule.clone());
    checker.fejer(&checker.prepare(f, a, b)?, p)
}

pub fn check_ls_operator(
    f: &OperatorFunction,
    p: &WeightFunction,
    a: &SymMatrix,
    b: &SymMatrix,
    rule: &QuadratureRule,
) -> Result<IneqReport> {
    let checker = Checker::new(rule.clone());
    checker.levin_steckin(&checker.prepare(f, a, b)?, p)
}

pub fn check_ostrowski_reverse(
    f: &OperatorFunction,
    p: &WeightFunction,
    a: &SymMatrix,
    b: &SymMatrix,
    rule: &QuadratureRule,
) -> Result<IneqReport> {
    let checker = Checker::new(rule.clone());
    checker.ostrowski_reverse(&checker.prepare(f, a, b)?, p)
}

pub fn check_gateaux_reverse(
    f: &OperatorFunction,
    p: &WeightFunction,
    a: &SymMatrix,
    b: &SymMatrix,
    rule: &QuadratureRule,
) -> Result<IneqReport> {
    let checker = Checker::new(rule.clone());
    checker.gateaux_reverse(
        &checker.prepare(f, a, b)?,
        p,
        DerivativeRoute::DaleckiiKrein,
    )
}

pub fn check_cebysev_reverse(
    f: &OperatorFunction,
    p: &WeightFunction,
    a: &SymMatrix,
    b: &SymMatrix,
    rule: &QuadratureRule,
) -> Result<IneqReport> {
    let checker = Checker::new(rule.clone());
    checker.cebysev_reverse(
        &checker.prepare(f, a, b)?,
        p,
        DerivativeRoute::DaleckiiKrein,
    )
}

pub fn check_lupas_reverse(
    f: &OperatorFunction,
    p: &WeightFunction,
    a: &SymMatrix,
    b: &SymMatrix,
    rule: &QuadratureRule,
) -> Result<IneqReport> {
    let checker = Checker::new(rule.clone());
    checker.lupas_reverse(&checker.prepare(f, a, b)?, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> SymMatrix {
        SymMatrix::diag(&[1.0, 3.0])
    }
    fn b() -> SymMatrix {
        SymMatrix::diag(&[2.0, 2.0])
    }
    fn rule() -> QuadratureRule {
        QuadratureRule::default()
    }

    #[test]
    fn ls_square_bump_closed_form() {
        let rep = check_ls_operator(
            &OperatorFunction::Square,
            &WeightFunction::bump(),
            &a(),
            &b(),
            &rule(),
        )
        .unwrap();
        // entrywise: (1/6) int (1+t)^2 - int t(1-t)(1+t)^2 = 7/18 - 23/60 = 1/180
        assert!(rep.gap.max_diff(&SymMatrix::scalar(2, 1.0 / 180.0)) < 1e-15);
        assert_eq!(rep.bound, SymMatrix::scalar(2, 1.0 / 64.0));
        assert_eq!(rep.coefficient, 1.0 / 16.0);
        assert!(rep.pass());
        let tight = rep.tightness.unwrap();
        assert!((tight - 64.0 / 180.0).abs() < 1e-12);
    }

    #[test]
    fn ls_constant_weight_is_equality() {
        let rep = check_ls_operator(
            &OperatorFunction::Square,
            &WeightFunction::constant(1.0),
            &a(),
            &b(),
            &rule(),
        )
        .unwrap();
        assert!(rep.gap.max_abs() < 1e-14);
        assert_eq!(rep.bound.max_abs(), 0.0);
        assert!(rep.pass());
        assert_eq!(rep.tightness, None);
    }

    #[test]
    fn ls_log_concave_orientation() {
        let i = SymMatrix::identity(2);
        let two = SymMatrix::scalar(2, 2.0);
        let rep = check_ls_operator(
            &OperatorFunction::Log,
            &WeightFunction::bump(),
            &i,
            &two,
            &rule(),
        )
        .unwrap();
        assert_eq!(rep.orientation.function_sign, -1.0);
        // scalar oracle on ln(1+t): int p ln - (1/6) int ln
        let n = 400_000;
        let (mut ipl, mut il) = (0.0, 0.0);
        for k in 0..n {
            let t = (k as f64 + 0.5) / n as f64;
            ipl += t * (1.0 - t) * (1.0 + t).ln() / n as f64;
            il += (1.0 + t).ln() / n as f64;
        }
        let expected_gap = ipl - il / 6.0;
        assert!((rep.gap.get(0, 0) - expected_gap).abs() < 1e-10);
        let expected_bound = ((1.5f64).ln() - 0.5 * 2.0f64.ln()) / 16.0;
        assert!((rep.bound.get(0, 0) - expected_bound).abs() < 1e-15);
        assert!(rep.pass());
    }

    #[test]
    fn ostrowski_square_bump() {
        let rep = check_ostrowski_reverse(
            &OperatorFunction::Square,
            &WeightFunction::bump(),
            &a(),
            &b(),
            &rule(),
        )
        .unwrap();
        assert_eq!(rep.bound, SymMatrix::scalar(2, 1.0 / 32.0));
        assert!(rep.pass());
    }

    #[test]
    fn ostrowski_inverse_scalar_instance() {
        let i = SymMatrix::identity(2);
        let two = SymMatrix::scalar(2, 2.0);
        let rep = check_ostrowski_reverse(
            &OperatorFunction::Inverse,
            &WeightFunction::bump(),
            &i,
            &two,
            &rule(),
        )
        .unwrap();
        // (1/6) ln 2 - int t(1-t)/(1+t) = (1/6) ln2 - (2 ln 2 - 3/2 + ...) via oracle
        let n = 400_000;
        let (mut ipg, mut ig) = (0.0, 0.0);
        for k in 0..n {
            let t = (k as f64 + 0.5) / n as f64;
            ipg += t * (1.0 - t) / (1.0 + t) / n as f64;
            ig += 1.0 / (1.0 + t) / n as f64;
        }
        assert!((rep.gap.get(1, 1) - (ig / 6.0 - ipg)).abs() < 1e-10);
        let bracket = 0.5 * (1.0 + 0.5) - 1.0 / 1.5;
        assert!((rep.bound.get(0, 0) - bracket / 8.0).abs() < 1e-15);
        assert!(rep.pass());
    }

    #[test]
    fn gateaux_square_bump() {
        let rep = check_gateaux_reverse(
            &OperatorFunction::Square,
            &WeightFunction::bump(),
            &a(),
            &b(),
            &rule(),
        )
        .unwrap();
        // nabla_B - nabla_A = 2 (B - A)^2 = 2 I; times 1/64
        assert!(rep.bound.max_diff(&SymMatrix::scalar(2, 1.0 / 32.0)) < 1e-15);
        assert!(rep.pass());
    }

    #[test]
    fn cebysev_square_bump() {
        let rep = check_cebysev_reverse(
            &OperatorFunction::Square,
            &WeightFunction::bump(),
            &a(),
            &b(),
            &rule(),
        )
        .unwrap();
        assert!(rep.bound.max_diff(&SymMatrix::scalar(2, 1.0 / 12.0)) < 1e-15);
        assert!(rep.pass());
    }

    #[test]
    fn lupas_square_bump() {
        let rep = check_lupas_reverse(
            &OperatorFunction::Square,
            &WeightFunction::bump(),
            &a(),
            &b(),
            &rule(),
        )
        .unwrap();
        // D(t) = 2((1-t)A + tB)(B-A) with B-A = diag(1,-1):
        // D(t) - D(1-t) = 2(1-2t)(A-B)(B-A) = -2(1-2t) I, norm^2 = 4(1-2t)^2,
        // integral 4/3. D(t) = 2 diag(1+t, -(3-t)), ||D||^2 = 4(3-t)^2, integral 76/3.
        let d2 = (1.0f64 / 3.0).sqrt();
        let pi2 = std::f64::consts::PI.powi(2);
        let tight = d2 / (2.0 * pi2) * (4.0f64 / 3.0).sqrt();
        let weak = d2 / pi2 * (76.0f64 / 3.0).sqrt();
        assert!((rep.bound.get(0, 0) - tight).abs() < 1e-13);
        assert!(rep.pass());
        assert_eq!(rep.extra_verdicts.len(), 1);
        let margin = rep.extra_verdicts[0].1.min_eig_of_difference;
        assert!((margin - (weak - tight)).abs() < 1e-12);
    }

    #[test]
    fn hermite_hadamard_square() {
        let rep = check_hermite_hadamard(&OperatorFunction::Square, &a(), &b(), &rule()).unwrap();
        // mid = diag(2.25, 6.25), mean = diag(7/3, 19/3), avg = diag(2.5, 6.5)
        let gap = SymMatrix::diag(&[7.0 / 3.0 - 2.25, 19.0 / 3.0 - 6.25]);
        assert!(rep.gap.max_diff(&gap) < 1e-14);
        assert!(rep.bound.max_diff(&SymMatrix::scalar(2, 0.25)) < 1e-15);
        assert!(rep.pass());
    }

    #[test]
    fn hermite_hadamard_affine_and_degenerate() {
        let rep =
            check_hermite_hadamard(&OperatorFunction::Power(1.0), &a(), &b(), &rule()).unwrap();
        assert!(rep.gap.max_abs() < 1e-14 && rep.bound.max_abs() < 1e-15);
        assert!(rep.pass());
        let rep = check_hermite_hadamard(&OperatorFunction::Inverse, &a(), &a(), &rule()).unwrap();
        assert!(rep.gap.max_abs() < 1e-15 && rep.bound.max_abs() == 0.0);
    }

    #[test]
    fn fejer_rejects_negative_weight() {
        let err = check_fejer(
            &OperatorFunction::Square,
            &WeightFunction::constant(-1.0),
            &a(),
            &b(),
            &rule(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::NegativeWeight { .. }));
        let rep = check_fejer(
            &OperatorFunction::Square,
            &WeightFunction::vee(),
            &a(),
            &b(),
            &rule(),
        )
        .unwrap();
        assert!(rep.pass());
    }

    #[test]
    fn hypotheses_enforced() {
        let e = check_ostrowski_reverse(
            &OperatorFunction::Square,
            &WeightFunction::vee(),
            &a(),
            &b(),
            &rule(),
        )
        .unwrap_err();
        assert!(matches!(e, Error::Hypothesis(_)));
        let e = check_ls_operator(
            &OperatorFunction::Power(3.0),
            &WeightFunction::bump(),
            &a(),
            &b(),
            &rule(),
        )
        .unwrap_err();
        assert!(matches!(e, Error::UnsupportedConvexity { .. }));
        let ramp = crate::weights::Table::new(vec![0.0, 1.0], vec![0.0, 1.0]).unwrap();
        let e = check_ls_operator(
            &OperatorFunction::Square,
            &WeightFunction::tabulated(ramp),
            &a(),
            &b(),
            &rule(),
        )
        .unwrap_err();
        assert!(matches!(e, Error::InvalidWeight(_)));
        let e = check_ls_operator(
            &OperatorFunction::Log,
            &WeightFunction::bump(),
            &SymMatrix::diag(&[-1.0, 1.0]),
            &b(),
            &rule(),
        )
        .unwrap_err();
        assert!(matches!(e, Error::SpectrumOutOfDomain { .. }));
    }

    #[test]
    fn vee_uses_reversed_orientation() {
        let rep = check_ls_operator(
            &OperatorFunction::Square,
            &WeightFunction::vee(),
            &a(),
            &b(),
            &rule(),
        )
        .unwrap();
        assert_eq!(rep.orientation.weight_sign, -1.0);
        assert_eq!(rep.coefficient, 0.125);
        assert!(rep.pass());
        // concave f with nonincreasing p: both signs flip
        let rep = check_ls_operator(
            &OperatorFunction::Log,
            &WeightFunction::vee(),
            &a(),
            &b(),
            &rule(),
        )
        .unwrap();
        assert_eq!(rep.orientation.gap_sign(), 1.0);
        assert!(rep.pass());
    }

    #[test]
    fn symmetrized_path_identity() {
        let f = OperatorFunction::Inverse;
        let sym = SymmetrizedPath::new(&f, &a(), &b()).unwrap();
        assert_eq!(sym.eval(0.3).unwrap(), sym.eval(0.7).unwrap());
        let mid = apply_fn(&f, &segment_point(&a(), &b(), 0.5).unwrap()).unwrap();
        assert!(sym.eval(0.5).unwrap().max_diff(&mid) < 1e-15);
    }

    #[test]
    fn derivative_routes_agree() {
        let checker = Checker::default();
        let path = checker
            .prepare(
                &OperatorFunction::Log,
                &SymMatrix::diag(&[1.0, 3.0]),
                &SymMatrix::from_rows(&[&[2.0, 0.4], &[0.4, 1.5]]).unwrap(),
            )
            .unwrap();
        let (dk, none) = checker
            .derivative_bracket(&path, DerivativeRoute::DaleckiiKrein)
            .unwrap();
        assert!(none.is_none());
        let (li, check) = checker
            .derivative_bracket(&path, DerivativeRoute::LogIntegral)
            .unwrap();
        assert!(check.unwrap() < 1e-7);
        assert!(li.max_diff(&dk) < 1e-7);
        assert!(checker
            .derivative_bracket(&path, DerivativeRoute::ClosedForm)
            .is_err());
    }
}
