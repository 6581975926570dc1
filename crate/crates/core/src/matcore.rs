//! Dense real symmetric matrices, the cyclic Jacobi eigensolver, spectral
//! functional calculus and Loewner-order comparison.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::funcs::OperatorFunction;

/// Default relative tolerance for PSD certification.
pub const DEFAULT_TOL_SCALE: f64 = 1e-9;

/// Jacobi stops once the off-diagonal Frobenius norm drops below this
/// fraction of the input's Frobenius norm.
pub const JACOBI_REL_TOL: f64 = 1e-13;
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Dense real symmetric matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    data: Vec<f64>,
    asymmetry: f64,
}

impl fmt::Debug for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SymMatrix {}x{} [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                write!(f, "{:>12.6e} ", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl SymMatrix {
    /// Builds a matrix from row-major data, replacing it by `(M + M^T)/2`.
    /// The largest `|M[i][j] - M[j][i]|` seen is kept as the asymmetry residual.
    pub fn new(dim: usize, data: Vec<f64>) -> Result<Self> {
        if dim == 0 || data.len() != dim * dim {
            return Err(Error::BadShape {
                dim,
                len: data.len(),
            });
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                context: "matrix entries",
            });
        }
        Ok(Self::symmetrized(dim, data))
    }

    pub fn from_rows(rows: &[&[f64]]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Self::new(dim, data)
    }

    pub(crate) fn symmetrized(dim: usize, mut data: Vec<f64>) -> Self {
        let mut asymmetry = 0.0f64;
        for i in 0..dim {
            for j in (i + 1)..dim {
                let a = data[i * dim + j];
                let b = data[j * dim + i];
                asymmetry = asymmetry.max((a - b).abs());
                let avg = 0.5 * (a + b);
                data[i * dim + j] = avg;
                data[j * dim + i] = avg;
            }
        }
        SymMatrix {
            dim,
            data,
            asymmetry,
        }
    }

    pub fn zeros(dim: usize) -> Self {
        SymMatrix {
            dim,
            data: vec![0.0; dim * dim],
            asymmetry: 0.0,
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, 1.0)
    }

    pub fn scalar(dim: usize, value: f64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = value;
        }
        m
    }

    pub fn diag(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, v) in values.iter().enumerate() {
            m.data[i * values.len() + i] = *v;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    /// Residual recorded when the input was symmetrized.
    pub fn asymmetry_residual(&self) -> f64 {
        self.asymmetry
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Largest absolute entrywise difference.
    pub fn max_diff(&self, other: &SymMatrix) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn check_same_dim(&self, other: &SymMatrix) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            })
        }
    }

    /// `self * x` for a vector `x`.
    pub fn mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        Ok(self
            .data
            .chunks_exact(self.dim)
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// `self + alpha * other`.
    pub fn axpy(&self, alpha: f64, other: &SymMatrix) -> SymMatrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + alpha * b)
            .collect();
        SymMatrix {
            dim: self.dim,
            data,
            asymmetry: 0.0,
        }
    }

    /// Jordan product `self * other + other * self`.
    pub fn anticommutator(&self, other: &SymMatrix) -> SymMatrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let ab = matmul(self.dim, &self.data, &other.data);
        let n = self.dim;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[i * n + j] = ab[i * n + j] + ab[j * n + i];
            }
        }
        SymMatrix::symmetrized(n, data)
    }

    /// `self * other * self`, symmetric whenever `other` is.
    pub fn sandwich(&self, other: &SymMatrix) -> SymMatrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim;
        let t = matmul(n, &self.data, &other.data);
        let out = matmul(n, &t, &self.data);
        SymMatrix::symmetrized(n, out)
    }

    /// `Q * self * Q^T` for a general row-major `Q`.
    pub fn congruence(&self, q: &[f64]) -> SymMatrix {
        let n = self.dim;
        assert_eq!(q.len(), n * n, "dimension mismatch");
        let t = matmul(n, q, &self.data);
        let out = matmul_bt(n, &t, q);
        SymMatrix::symmetrized(n, out)
    }

    /// `Q^T * self * Q` for a general row-major `Q`.
    pub fn congruence_transpose(&self, q: &[f64]) -> SymMatrix {
        let n = self.dim;
        assert_eq!(q.len(), n * n, "dimension mismatch");
        let qt = transpose(n, q);
        self.congruence(&qt)
    }

    pub fn eigh(&self) -> Result<SpectralDecomposition> {
        eigh(self)
    }

    /// Spectral norm, `max |lambda_i|`.
    pub fn spectral_norm(&self) -> Result<f64> {
        Ok(self.eigh()?.spectral_norm())
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(self.eigh()?.eigenvalues[0])
    }

    pub fn max_eigenvalue(&self) -> Result<f64> {
        Ok(*self.eigh()?.eigenvalues.last().expect("dim >= 1"))
    }
}

impl Add for &SymMatrix {
    type Output = SymMatrix;
    fn add(self, rhs: &SymMatrix) -> SymMatrix {
        self.axpy(1.0, rhs)
    }
}

impl Sub for &SymMatrix {
    type Output = SymMatrix;
    fn sub(self, rhs: &SymMatrix) -> SymMatrix {
        self.axpy(-1.0, rhs)
    }
}

impl Mul<f64> for &SymMatrix {
    type Output = SymMatrix;
    fn mul(self, rhs: f64) -> SymMatrix {
        SymMatrix {
            dim: self.dim,
            data: self.data.iter().map(|v| v * rhs).collect(),
            asymmetry: 0.0,
        }
    }
}

impl Neg for &SymMatrix {
    type Output = SymMatrix;
    fn neg(self) -> SymMatrix {
        self * -1.0
    }
}

pub(crate) fn matmul(n: usize, a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

/// `a * b^T`.
pub(crate) fn matmul_bt(n: usize, a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            out[i * n + j] = (0..n).map(|k| a[i * n + k] * b[j * n + k]).sum();
        }
    }
    out
}

pub(crate) fn transpose(n: usize, a: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            out[j * n + i] = a[i * n + j];
        }
    }
    out
}

/// `M = Q diag(lambda) Q^T` with eigenvalues ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    /// Row-major `n x n`; column `k` is the eigenvector for `eigenvalues[k]`.
    pub eigenvectors: Vec<f64>,
    pub source_dim: usize,
}

impl SpectralDecomposition {
    /// `Q diag(g(lambda)) Q^T`.
    pub fn map<F: FnMut(f64) -> f64>(&self, mut g: F) -> SymMatrix {
        let values: Vec<f64> = self.eigenvalues.iter().map(|&l| g(l)).collect();
        SymMatrix::diag(&values).congruence(&self.eigenvectors)
    }

    pub fn reconstruct(&self) -> SymMatrix {
        self.map(|l| l)
    }

    pub fn spectral_norm(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0f64, |m, l| m.max(l.abs()))
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[self.source_dim - 1]
    }

    /// `max |Q^T Q - I|`.
    pub fn orthogonality_residual(&self) -> f64 {
        let n = self.source_dim;
        let qt = transpose(n, &self.eigenvectors);
        let g = matmul(n, &qt, &self.eigenvectors);
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g[i * n + j] - target).abs());
            }
        }
        worst
    }
}

/// Symmetric eigendecomposition by cyclic Jacobi rotations.
pub fn eigh(m: &SymMatrix) -> Result<SpectralDecomposition> {
    let n = m.dim;
    let mut a = m.data.clone();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let threshold = JACOBI_REL_TOL * m.frobenius_norm();

    let off_norm = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i * n + j] * a[i * n + j];
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    loop {
        let off = off_norm(&a);
        if off <= threshold {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::EigenNoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let tau = (aqq - app) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // A <- J^T A J with J the (p, q) rotation [c s; -s c].
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;

                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[i * n + i]).collect();
    let mut eigenvectors = vec![0.0; n * n];
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            eigenvectors[row * n + col] = v[row * n + src];
        }
    }
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
        source_dim: n,
    })
}

/// `f(M) = Q f(Lambda) Q^T`.
pub fn apply_fn(f: &OperatorFunction, m: &SymMatrix) -> Result<SymMatrix> {
    let dec = eigh(m)?;
    apply_fn_decomposed(f, &dec)
}

pub(crate) fn apply_fn_decomposed(
    f: &OperatorFunction,
    dec: &SpectralDecomposition,
) -> Result<SymMatrix> {
    let mut values = Vec::with_capacity(dec.source_dim);
    for &l in &dec.eigenvalues {
        let v = f.eval(l)?;
        if !v.is_finite() {
            return Err(Error::NonFinite {
                context: "function of eigenvalue",
            });
        }
        values.push(v);
    }
    Ok(SymMatrix::diag(&values).congruence(&dec.eigenvectors))
}

/// Outcome of testing `X <= Y` in the Loewner order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoewnerVerdict {
    /// `lambda_min(Y - X)`.
    pub min_eig_of_difference: f64,
    pub tolerance_used: f64,
    pub holds: bool,
}

impl LoewnerVerdict {
    pub fn new(min_eig_of_difference: f64, tolerance_used: f64) -> Self {
        LoewnerVerdict {
            min_eig_of_difference,
            tolerance_used,
            holds: min_eig_of_difference >= -tolerance_used,
        }
    }
}

/// Tests `X <= Y`: holds iff `lambda_min(Y - X) >= -tol_scale * (1 + ||Y - X||_2)`.
pub fn loewner_leq(x: &SymMatrix, y: &SymMatrix, tol_scale: f64) -> Result<LoewnerVerdict> {
    x.check_same_dim(y)?;
    let dec = eigh(&(y - x))?;
    Ok(LoewnerVerdict::new(
        dec.min(),
        tol_scale * (1.0 + dec.spectral_norm()),
    ))
}

/// `(1 - t) A + t B`.
pub fn segment_point(a: &SymMatrix, b: &SymMatrix, t: f64) -> Result<SymMatrix> {
    a.check_same_dim(b)?;
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::ParameterOutOfRange {
            name: "t",
            value: t,
            lo: 0.0,
            hi: 1.0,
        });
    }
    if t == 0.0 {
        return Ok(a.clone());
    }
    if t == 1.0 {
        return Ok(b.clone());
    }
    let data = a
        .data
        .iter()
        .zip(&b.data)
        .map(|(x, y)| (1.0 - t) * x + t * y)
        .collect();
    Ok(SymMatrix {
        dim: a.dim,
        data,
        asymmetry: 0.0,
    })
}

/// `<M x, x>`.
pub fn quadratic_form(m: &SymMatrix, x: &[f64]) -> Result<f64> {
    let mx = m.mul_vec(x)?;
    Ok(mx.iter().zip(x).map(|(a, b)| a * b).sum())
}

/// Inverse of a symmetric positive definite matrix via Cholesky, without
/// going through the eigendecomposition.
pub fn inverse_spd(m: &SymMatrix) -> Result<SymMatrix> {
    let n = m.dim;
    let mut l = vec![0.0; n * n];
    for j in 0..n {
        let mut d = m.get(j, j);
        for k in 0..j {
            d -= l[j * n + k] * l[j * n + k];
        }
        if d <= 0.0 || !d.is_finite() {
            return Err(Error::NotPositiveDefinite);
        }
        let djj = d.sqrt();
        l[j * n + j] = djj;
        for i in (j + 1)..n {
            let mut s = m.get(i, j);
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k];
            }
            l[i * n + j] = s / djj;
        }
    }
    // Solve L Y = I, then M^{-1} = Y^T Y.
    let mut y = vec![0.0; n * n];
    for col in 0..n {
        for i in 0..n {
            let mut s = if i == col { 1.0 } else { 0.0 };
            for k in 0..i {
                s -= l[i * n + k] * y[k * n + col];
            }
            y[i * n + col] = s / l[i * n + i];
        }
    }
    let yt = transpose(n, &y);
    Ok(SymMatrix::symmetrized(n, matmul(n, &yt, &y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_distr::{Distribution, StandardNormal};

    fn random_sym(n: usize, seed: u64) -> SymMatrix {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let data: Vec<f64> = (0..n * n)
            .map(|_| StandardNormal.sample(&mut rng))
            .collect();
        SymMatrix::new(n, data).unwrap()
    }

    #[test]
    fn construction_symmetrizes() {
        let m = SymMatrix::from_rows(&[&[1.0, 2.0], &[4.0, 3.0]]).unwrap();
        assert_eq!(m.get(0, 1), 3.0);
        assert_eq!(m.get(1, 0), 3.0);
        assert_eq!(m.asymmetry_residual(), 2.0);
        assert!(SymMatrix::new(2, vec![1.0, f64::NAN, 0.0, 1.0]).is_err());
        assert!(SymMatrix::new(2, vec![1.0; 3]).is_err());
    }

    #[test]
    fn eigh_diagonal() {
        let dec = eigh(&SymMatrix::diag(&[3.0, 1.0])).unwrap();
        assert_eq!(dec.eigenvalues, vec![1.0, 3.0]);
        // columns are a permutation of identity columns
        assert_eq!(dec.eigenvectors, vec![0.0, 1.0, 1.0, 0.0]);
    }

    #[test]
    fn eigh_swap_matrix() {
        let m = SymMatrix::from_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let dec = eigh(&m).unwrap();
        assert!((dec.eigenvalues[0] + 1.0).abs() < 1e-15);
        assert!((dec.eigenvalues[1] - 1.0).abs() < 1e-15);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        // eigenvector for -1 is (1, -1)/sqrt2 up to sign
        let (v0, v1) = (dec.eigenvectors[0], dec.eigenvectors[2]);
        assert!((v0.abs() - h).abs() < 1e-15 && (v0 + v1).abs() < 1e-15);
        let (w0, w1) = (dec.eigenvectors[1], dec.eigenvectors[3]);
        assert!((w0.abs() - h).abs() < 1e-15 && (w0 - w1).abs() < 1e-15);
    }

    #[test]
    fn eigh_random_reconstruction() {
        for seed in 0..5 {
            let m = random_sym(8, seed);
            let dec = eigh(&m).unwrap();
            // oracle: explicit Q Lambda Q^T re-multiplication
            let n = 8;
            let mut rebuilt = vec![0.0; n * n];
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        rebuilt[i * n + j] += dec.eigenvectors[i * n + k]
                            * dec.eigenvalues[k]
                            * dec.eigenvectors[j * n + k];
                    }
                }
            }
            let err = rebuilt
                .iter()
                .zip(m.as_slice())
                .fold(0.0f64, |w, (a, b)| w.max((a - b).abs()));
            assert!(err <= 1e-9 * (1.0 + m.max_abs()), "residual {err}");
            assert!(dec.orthogonality_residual() <= 1e-10);
            assert!(dec.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn eigh_zero_matrix() {
        let dec = eigh(&SymMatrix::zeros(3)).unwrap();
        assert_eq!(dec.eigenvalues, vec![0.0; 3]);
    }

    #[test]
    fn apply_fn_examples() {
        let sq = apply_fn(&OperatorFunction::Square, &SymMatrix::diag(&[1.0, 2.0])).unwrap();
        assert!(sq.max_diff(&SymMatrix::diag(&[1.0, 4.0])) < 1e-15);

        let m = SymMatrix::from_rows(&[&[2.0, 1.0], &[1.0, 2.0]]).unwrap();
        let inv = apply_fn(&OperatorFunction::Inverse, &m).unwrap();
        // oracle: adjugate over determinant
        let expected =
            SymMatrix::from_rows(&[&[2.0 / 3.0, -1.0 / 3.0], &[-1.0 / 3.0, 2.0 / 3.0]]).unwrap();
        assert!(inv.max_diff(&expected) < 1e-14);

        let lg = apply_fn(
            &OperatorFunction::Log,
            &SymMatrix::diag(&[1.0, std::f64::consts::E]),
        )
        .unwrap();
        assert!(lg.max_diff(&SymMatrix::diag(&[0.0, 1.0])) < 1e-15);
    }

    #[test]
    fn apply_fn_rejects_out_of_domain() {
        let m = SymMatrix::diag(&[-1.0, 2.0]);
        assert!(matches!(
            apply_fn(&OperatorFunction::Log, &m),
            Err(Error::SpectrumOutOfDomain { .. })
        ));
    }

    #[test]
    fn loewner_examples() {
        let v = loewner_leq(
            &SymMatrix::zeros(2),
            &SymMatrix::identity(2),
            DEFAULT_TOL_SCALE,
        )
        .unwrap();
        assert!(v.holds);
        assert_eq!(v.min_eig_of_difference, 1.0);
        let v = loewner_leq(&SymMatrix::diag(&[1.0, -1.0]), &SymMatrix::zeros(2), 1e-9).unwrap();
        assert!(!v.holds);
        assert_eq!(v.min_eig_of_difference, -1.0);
        assert!(loewner_leq(&SymMatrix::zeros(2), &SymMatrix::zeros(3), 1e-9).is_err());
    }

    #[test]
    fn segment_examples() {
        let a = SymMatrix::diag(&[1.0, 3.0]);
        let b = SymMatrix::diag(&[2.0, 2.0]);
        assert_eq!(segment_point(&a, &b, 0.0).unwrap(), a);
        assert_eq!(segment_point(&a, &b, 1.0).unwrap(), b);
        assert_eq!(
            segment_point(&a, &b, 0.5).unwrap(),
            SymMatrix::diag(&[1.5, 2.5])
        );
        let i = SymMatrix::identity(2);
        let three = SymMatrix::scalar(2, 3.0);
        assert_eq!(
            segment_point(&i, &three, 0.25).unwrap(),
            SymMatrix::scalar(2, 1.5)
        );
        assert!(segment_point(&a, &b, 1.5).is_err());
        assert!(segment_point(&a, &b, -0.1).is_err());
    }

    #[test]
    fn quadratic_form_examples() {
        assert_eq!(
            quadratic_form(&SymMatrix::identity(2), &[1.0, 1.0]).unwrap(),
            2.0
        );
        assert_eq!(
            quadratic_form(&SymMatrix::diag(&[2.0, 5.0]), &[1.0, 0.0]).unwrap(),
            2.0
        );
        let m = SymMatrix::from_rows(&[&[2.0, 1.0], &[1.0, 2.0]]).unwrap();
        // direct expansion: 2 + 1 + 1 + 2
        assert_eq!(quadratic_form(&m, &[1.0, 1.0]).unwrap(), 6.0);
        assert!(quadratic_form(&m, &[1.0]).is_err());
    }

    #[test]
    fn cholesky_inverse_matches_spectral() {
        let base = random_sym(6, 3);
        let m = &base.sandwich(&SymMatrix::identity(6)) + &SymMatrix::scalar(6, 8.0);
        let chol = inverse_spd(&m).unwrap();
        let spec = apply_fn(&OperatorFunction::Inverse, &m).unwrap();
        assert!(chol.max_diff(&spec) < 1e-13);
        assert!(matches!(
            inverse_spd(&SymMatrix::diag(&[1.0, -1.0])),
            Err(Error::NotPositiveDefinite)
        ));
    }
}
