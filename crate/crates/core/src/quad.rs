//! Composite Gauss-Legendre quadrature on `[0, 1]` and its algebraic
//! transform onto `[0, inf)`.
//!
//! All sums are taken sequentially in node order so results are
//! bit-reproducible.

use crate::error::{Error, Result};
use crate::matcore::SymMatrix;

pub const DEFAULT_POINTS_PER_PANEL: usize = 16;
pub const DEFAULT_PANELS: usize = 32;

/// Gauss-Legendre nodes and weights on `[-1, 1]`, nodes ascending.
fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    // Roots come in +-x pairs; solve for the positive half by Newton and mirror.
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // i-th largest root
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[n - 1 - i] = w;
        weights[i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Composite Gauss-Legendre rule on `[0, 1]` with equal-width panels.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub panels: usize,
    pub points_per_panel: usize,
}

impl Default for QuadratureRule {
    fn default() -> Self {
        QuadratureRule::new(DEFAULT_POINTS_PER_PANEL, DEFAULT_PANELS)
            .expect("default rule is valid")
    }
}

impl QuadratureRule {
    pub fn new(points_per_panel: usize, panels: usize) -> Result<Self> {
        if points_per_panel == 0 || panels == 0 {
            return Err(Error::InvalidSpec(format!(
                "quadrature needs positive sizes, got {points_per_panel}x{panels}"
            )));
        }
        let (x, w) = gauss_legendre(points_per_panel);
        let h = 1.0 / panels as f64;
        let mut nodes = Vec::with_capacity(points_per_panel * panels);
        let mut weights = Vec::with_capacity(points_per_panel * panels);
        for k in 0..panels {
            let left = k as f64 * h;
            for (xi, wi) in x.iter().zip(&w) {
                nodes.push(left + 0.5 * h * (xi + 1.0));
                weights.push(0.5 * h * wi);
            }
        }
        Ok(QuadratureRule {
            nodes,
            weights,
            panels,
            points_per_panel,
        })
    }

    /// Same points per panel, twice the panels.
    pub fn refined(&self) -> QuadratureRule {
        QuadratureRule::new(self.points_per_panel, 2 * self.panels).expect("valid sizes")
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }
}

/// `sum_i w_i g(t_i)`.
pub fn integrate_scalar<G: FnMut(f64) -> f64>(mut g: G, rule: &QuadratureRule) -> Result<f64> {
    let mut acc = 0.0;
    for (t, w) in rule.iter() {
        let v = g(t);
        if !v.is_finite() {
            return Err(Error::NonFinite {
                context: "scalar integrand",
            });
        }
        acc += w * v;
    }
    Ok(acc)
}

/// Entrywise `sum_i w_i g(t_i)` for a matrix-valued integrand.
pub fn integrate_matrix<G>(mut g: G, rule: &QuadratureRule) -> Result<SymMatrix>
where
    G: FnMut(f64) -> Result<SymMatrix>,
{
    let mut acc: Option<SymMatrix> = None;
    for (t, w) in rule.iter() {
        let v = g(t)?;
        acc = Some(accumulate(acc, w, &v, "matrix integrand")?);
    }
    Ok(acc.expect("rule has at least one node"))
}

/// Weighted sum of precomputed samples, in order.
pub(crate) fn weighted_sum<'a, I>(terms: I) -> Result<SymMatrix>
where
    I: IntoIterator<Item = (f64, &'a SymMatrix)>,
{
    let mut acc: Option<SymMatrix> = None;
    for (w, m) in terms {
        acc = Some(accumulate(acc, w, m, "weighted sum")?);
    }
    acc.ok_or(Error::InvalidSpec("empty weighted sum".into()))
}

fn accumulate(
    acc: Option<SymMatrix>,
    w: f64,
    v: &SymMatrix,
    context: &'static str,
) -> Result<SymMatrix> {
    if !v.is_finite() {
        return Err(Error::NonFinite { context });
    }
    match acc {
        None => Ok(v * w),
        Some(a) => {
            a.check_same_dim(v)?;
            Ok(a.axpy(w, v))
        }
    }
}

/// `[0, 1)` rule mapped onto `[0, inf)` by `s = u / (1 - u)`, `ds = du / (1 - u)^2`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SemiInfiniteRule {
    pub base: QuadratureRule,
}

impl SemiInfiniteRule {
    pub fn new(base: QuadratureRule) -> Self {
        SemiInfiniteRule { base }
    }

    /// Transformed nodes `s_i` and weights `w_i / (1 - u_i)^2`.
    pub fn nodes_and_weights(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.base.iter().map(|(u, w)| {
            let one_minus = 1.0 - u;
            (u / one_minus, w / (one_minus * one_minus))
        })
    }
}

/// `int_0^inf g(s) ds` for an integrand decaying at least like `s^-2`.
pub fn integrate_semi_infinite_matrix<G>(mut g: G, rule: &SemiInfiniteRule) -> Result<SymMatrix>
where
    G: FnMut(f64) -> Result<SymMatrix>,
{
    let mut acc: Option<SymMatrix> = None;
    for (s, w) in rule.nodes_and_weights() {
        let v = g(s)?;
        acc = Some(accumulate(acc, w, &v, "semi-infinite integrand")?);
    }
    Ok(acc.expect("rule has at least one node"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::{inverse_spd, segment_point};

    #[test]
    fn rule_invariants() {
        for (p, k) in [(1, 1), (2, 3), (5, 4), (16, 32), (7, 1)] {
            let rule = QuadratureRule::new(p, k).unwrap();
            let total: f64 = rule.weights.iter().sum();
            assert!((total - 1.0).abs() <= 1e-14, "{p}x{k}: {total}");
            assert!(rule.nodes.iter().all(|&t| t > 0.0 && t < 1.0));
            assert!(rule.nodes.windows(2).all(|w| w[0] < w[1]));
            assert!(rule.weights.iter().all(|&w| w > 0.0));
        }
        assert!(QuadratureRule::new(0, 3).is_err());
        assert!(QuadratureRule::new(3, 0).is_err());
    }

    #[test]
    fn monomial_exactness() {
        for p in [1, 2, 4, 8, 16] {
            for panels in [1, 3] {
                let rule = QuadratureRule::new(p, panels).unwrap();
                for k in 0..(2 * p) {
                    let got = integrate_scalar(|t| t.powi(k as i32), &rule).unwrap();
                    let exact = 1.0 / (k as f64 + 1.0);
                    assert!(
                        (got - exact).abs() <= 1e-12 * exact,
                        "p={p} panels={panels} k={k}: {got} vs {exact}"
                    );
                }
            }
        }
    }

    #[test]
    fn scalar_examples() {
        let rule = QuadratureRule::default();
        assert!((integrate_scalar(|_| 1.0, &rule).unwrap() - 1.0).abs() < 1e-14);
        assert!((integrate_scalar(|t| t * (1.0 - t), &rule).unwrap() - 1.0 / 6.0).abs() < 1e-15);
        assert!(
            (integrate_scalar(|t| t.powi(3) * (1.0 - t), &rule).unwrap() - 1.0 / 20.0).abs()
                < 1e-15
        );
        assert!(integrate_scalar(|t| 1.0 / (t - t), &rule).is_err());
    }

    #[test]
    fn matrix_examples() {
        let rule = QuadratureRule::default();
        let m = SymMatrix::from_rows(&[&[1.0, 2.0], &[2.0, -3.0]]).unwrap();
        let got = integrate_matrix(|_| Ok(m.clone()), &rule).unwrap();
        assert!(got.max_diff(&m) < 1e-13);

        let got = integrate_matrix(|t| Ok(SymMatrix::scalar(2, t)), &rule).unwrap();
        assert!(got.max_diff(&SymMatrix::scalar(2, 0.5)) < 1e-15);

        let a = SymMatrix::diag(&[1.0, 3.0]);
        let b = SymMatrix::diag(&[2.0, 2.0]);
        let got = integrate_matrix(
            |t| {
                let x = segment_point(&a, &b, t)?;
                Ok(x.sandwich(&SymMatrix::identity(2)))
            },
            &rule,
        )
        .unwrap();
        // int (1+t)^2 = 7/3, int (3-t)^2 = 19/3
        assert!(got.max_diff(&SymMatrix::diag(&[7.0 / 3.0, 19.0 / 3.0])) < 1e-14);

        let bad = integrate_matrix(
            |t| {
                if t < 0.5 {
                    Ok(SymMatrix::zeros(2))
                } else {
                    Ok(SymMatrix::zeros(3))
                }
            },
            &rule,
        );
        assert!(matches!(bad, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn semi_infinite_examples() {
        let rule = SemiInfiniteRule::default();
        for (s, w) in rule.nodes_and_weights() {
            assert!(s.is_finite() && s > 0.0 && w > 0.0);
        }
        let resolvent_pair = |t: &SymMatrix, dir: &SymMatrix| {
            let t = t.clone();
            let dir = dir.clone();
            move |s: f64| {
                let r = inverse_spd(&(&t + &SymMatrix::scalar(t.dim(), s)))?;
                Ok(r.sandwich(&dir))
            }
        };
        let i2 = SymMatrix::identity(2);
        let got = integrate_semi_infinite_matrix(resolvent_pair(&i2, &i2), &rule).unwrap();
        assert!(got.max_diff(&i2) < 1e-12);

        let t = SymMatrix::diag(&[1.0, 2.0]);
        let got = integrate_semi_infinite_matrix(resolvent_pair(&t, &i2), &rule).unwrap();
        assert!(got.max_diff(&SymMatrix::diag(&[1.0, 0.5])) < 1e-12);

        let swap = SymMatrix::from_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let got = integrate_semi_infinite_matrix(resolvent_pair(&t, &swap), &rule).unwrap();
        let ln2 = std::f64::consts::LN_2;
        assert!((got.get(0, 1) - ln2).abs() < 1e-12);
        assert!(got.get(0, 0).abs() < 1e-15 && got.get(1, 1).abs() < 1e-15);
    }

    #[test]
    fn panel_doubling_converges() {
        let rule = QuadratureRule::default();
        let fine = rule.refined();
        let integrands: [fn(f64) -> f64; 4] = [
            |t| (1.0 + t).ln(),
            |t| 1.0 / (0.7 + t),
            |t| (0.5 + 3.0 * t).powf(1.5),
            |t| (0.5 + t) * (0.5 + t).ln(),
        ];
        for g in integrands {
            let q1 = integrate_scalar(g, &rule).unwrap();
            let q2 = integrate_scalar(g, &fine).unwrap();
            assert!((q1 - q2).abs() <= 1e-10 * (1.0 + q1.abs()));
        }
    }

    #[test]
    fn linearity() {
        let rule = QuadratureRule::new(8, 4).unwrap();
        let g = |t: f64| SymMatrix::from_rows(&[&[t, t * t], &[t * t, 1.0 - t]]).unwrap();
        let h = |t: f64| SymMatrix::diag(&[t.exp(), t.sin()]);
        let (alpha, beta) = (2.5, -0.75);
        let lhs = integrate_matrix(|t| Ok(&(&g(t) * alpha) + &(&h(t) * beta)), &rule).unwrap();
        let ig = integrate_matrix(|t| Ok(g(t)), &rule).unwrap();
        let ih = integrate_matrix(|t| Ok(h(t)), &rule).unwrap();
        let rhs = &(&ig * alpha) + &(&ih * beta);
        assert!(lhs.max_diff(&rhs) < 1e-14);
    }
}
