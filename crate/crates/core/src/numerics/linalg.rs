//! Dense complex matrices and the few factorizations the rate expressions
//! need: Hermitian (Cholesky) solves, a power-iteration leading eigenvector
//! and matrix products. Dimensions here are tiny (antenna counts), so the
//! implementations favour clarity over blocking.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hermitian inner product `x^H y`.
pub fn inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    debug_assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

/// Squared Euclidean norm.
pub fn norm_sqr(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// Euclidean norm.
pub fn norm(v: &[Complex64]) -> f64 {
    norm_sqr(v).sqrt()
}

/// Unit-norm copy of `v`.
pub fn normalize(v: &[Complex64]) -> Vec<Complex64> {
    let n = norm(v);
    v.iter().map(|z| z / n).collect()
}

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Build from row slices; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        Self {
            rows: r,
            cols: c,
            data,
        }
    }

    /// Rank-one matrix `x y^H`.
    pub fn outer(x: &[Complex64], y: &[Complex64]) -> Self {
        let mut m = Self::zeros(x.len(), y.len());
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                m[(i, j)] = xi * yj.conj();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn conj_transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    /// `M v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn trace_re(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].re).sum()
    }

    /// Largest deviation `|M - M^H|` over all entries.
    pub fn max_asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Is the matrix Hermitian within `tol` relative to its largest entry?
    pub fn is_hermitian(&self, tol: f64) -> bool {
        if self.rows != self.cols {
            return false;
        }
        let scale = self
            .data
            .iter()
            .map(|z| z.norm())
            .fold(0.0f64, f64::max)
            .max(1e-300);
        self.max_asymmetry() <= tol * scale
    }

    /// `(M + M^H) / 2`.
    pub fn hermitianize(&self) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Lower-triangular Cholesky factor of a Hermitian positive definite matrix.
pub struct CholeskyFactor {
    l: CMatrix,
}

impl CholeskyFactor {
    pub fn dim(&self) -> usize {
        self.l.rows()
    }

    /// Solve `L z = b` (forward substitution).
    pub fn forward(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim();
        let mut z = b.to_vec();
        for i in 0..n {
            for j in 0..i {
                let lij = self.l[(i, j)];
                z[i] = z[i] - lij * z[j];
            }
            z[i] /= self.l[(i, i)];
        }
        z
    }

    /// Solve `A x = b` with `A = L L^H`.
    pub fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim();
        let mut x = self.forward(b);
        // Back substitution with L^H.
        for i in (0..n).rev() {
            for j in (i + 1)..n {
                let lji = self.l[(j, i)].conj();
                x[i] = x[i] - lji * x[j];
            }
            x[i] /= self.l[(i, i)];
        }
        x
    }
}

/// Cholesky factorization of a Hermitian positive definite matrix.
/// Returns `None` when a pivot is non-positive or non-finite.
pub fn cholesky(a: &CMatrix) -> Option<CholeskyFactor> {
    let n = a.rows();
    if n != a.cols() {
        return None;
    }
    let mut l = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut sum = a[(i, j)];
            for k in 0..j {
                sum -= l[(i, k)] * l[(j, k)].conj();
            }
            if i == j {
                let pivot = sum.re;
                if !pivot.is_finite() || pivot <= 0.0 {
                    return None;
                }
                l[(i, i)] = Complex64::new(pivot.sqrt(), 0.0);
            } else {
                l[(i, j)] = sum / l[(j, j)];
            }
        }
    }
    Some(CholeskyFactor { l })
}

/// Cholesky with one jitter retry: on failure, `1e-12 * trace/n` is added to
/// the diagonal once. Near-singular effective-noise covariances at extreme
/// SNR are the expected caller.
pub fn cholesky_jittered(a: &CMatrix) -> Result<CholeskyFactor> {
    if let Some(f) = cholesky(a) {
        return Ok(f);
    }
    let n = a.rows();
    let jitter = 1e-12 * a.trace_re() / n as f64;
    let mut regularized = a.clone();
    for i in 0..n {
        regularized[(i, i)] += Complex64::new(jitter.abs().max(f64::MIN_POSITIVE), 0.0);
    }
    cholesky(&regularized).ok_or_else(|| {
        Error::Singular(format!(
            "Hermitian factorization failed after jitter {jitter:.3e} (n = {n})"
        ))
    })
}

const HERMITIAN_TOL: f64 = 1e-12;

/// The real quadratic form `x^H A^{-1} x` for Hermitian positive definite `A`.
pub fn hermitian_quadratic_solve(a: &CMatrix, x: &[Complex64]) -> Result<f64> {
    if a.rows() != a.cols() || a.rows() != x.len() {
        return Err(Error::Dimension(format!(
            "quadratic solve: A is {}x{}, x has length {}",
            a.rows(),
            a.cols(),
            x.len()
        )));
    }
    if !a.is_hermitian(HERMITIAN_TOL) {
        return Err(Error::NonHermitian {
            asymmetry: a.max_asymmetry(),
        });
    }
    let factor = cholesky_jittered(a)?;
    // x^H (L L^H)^{-1} x = ||L^{-1} x||^2
    Ok(norm_sqr(&factor.forward(x)))
}

const POWER_ITER_MAX: usize = 10_000;
const POWER_ITER_TOL: f64 = 1e-11;
const POWER_ITER_ACCEPT: f64 = 1e-8;

/// Leading eigenpair of a Hermitian PSD matrix by power iteration.
///
/// Starts from `e1 + 1e-3 e2` so runs are reproducible; the perturbation
/// escapes starts that are exactly orthogonal to the leading eigenvector.
pub fn leading_eigenvector(m: &CMatrix) -> Result<(Vec<Complex64>, f64)> {
    let n = m.rows();
    let mut start = vec![Complex64::new(0.0, 0.0); n];
    if n > 0 {
        start[0] = Complex64::new(1.0, 0.0);
    }
    if n > 1 {
        start[1] = Complex64::new(1e-3, 0.0);
    }
    power_iteration(m, start, POWER_ITER_ACCEPT)
}

fn power_iteration(
    m: &CMatrix,
    start: Vec<Complex64>,
    accept: f64,
) -> Result<(Vec<Complex64>, f64)> {
    let n = m.rows();
    if n == 0 || n != m.cols() {
        return Err(Error::Dimension(format!(
            "leading_eigenvector requires a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if !m.is_hermitian(HERMITIAN_TOL) {
        return Err(Error::NonHermitian {
            asymmetry: m.max_asymmetry(),
        });
    }
    let mut v = normalize(&start);
    let mut lambda = 0.0;
    let mut residual = f64::INFINITY;
    for _ in 0..POWER_ITER_MAX {
        let w = m.mul_vec(&v);
        lambda = inner(&v, &w).re;
        let wn = norm(&w);
        if wn == 0.0 {
            // M annihilates v: v is an eigenvector for eigenvalue 0.
            return Ok((v, 0.0));
        }
        residual = (0..n)
            .map(|i| (w[i] - v[i] * lambda).norm_sqr())
            .sum::<f64>()
            .sqrt();
        let scale = lambda.abs().max(f64::MIN_POSITIVE);
        v = w.iter().map(|z| z / wn).collect();
        if residual <= POWER_ITER_TOL * scale {
            return Ok((v, lambda));
        }
    }
    if residual <= accept * lambda.abs().max(f64::MIN_POSITIVE) {
        return Ok((v, lambda));
    }
    Err(Error::NonConvergence(format!(
        "power iteration residual {residual:.3e} after {POWER_ITER_MAX} iterations"
    )))
}

/// Estimates of the smallest and largest eigenvalues of a Hermitian matrix.
///
/// The largest comes from power iteration; the smallest from power iteration
/// on `lambda_max I - M`. Adequate for rank screens and PSD checks. Both
/// passes start from a full-support ramp vector, so diagonal matrices do not
/// trap the iteration in an invariant coordinate subspace. Clustered
/// eigenvalues stall the residual, but the Rayleigh quotient error is
/// quadratic in it, so a relaxed residual acceptance still delivers
/// screen-grade eigenvalue accuracy.
pub fn eigen_extremes(m: &CMatrix) -> Result<(f64, f64)> {
    let n = m.rows();
    let ramp: Vec<Complex64> = (0..n)
        .map(|i| Complex64::new(1.0, 0.13 + 0.71 * i as f64))
        .collect();
    let (_, lambda_max) = power_iteration(m, ramp.clone(), 1e-5)?;
    let mut shifted = m.scale(-1.0);
    // Shift a little past lambda_max so the target eigenvalue stays dominant.
    let shift = lambda_max.abs() * (1.0 + 1e-3) + 1e-6;
    for i in 0..n {
        shifted[(i, i)] += Complex64::new(shift, 0.0);
    }
    let (_, mu) = power_iteration(&shifted, ramp, 1e-5)?;
    Ok((shift - mu, lambda_max))
}
