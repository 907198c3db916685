//! Feedback codebooks and the selection / precoding rules driven by them.
//!
//! Two codebooks cover all scenarios: a uniform phase codebook for the
//! residual phase of the effective scalar channel (1-bit receivers are
//! phase sensitive) and a random vector quantization (RVQ) codebook of
//! isotropic unit vectors for the channel direction. Every argmax breaks
//! ties toward the lowest index so runs are reproducible under fixed seeds.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{cholesky, inner, leading_eigenvector, norm, normalize, CMatrix, SampleRng};
use crate::quantizer::Resolution;

const FRAC_PI_2: f64 = std::f64::consts::FRAC_PI_2;

/// Uniform codebook over `[0, pi/2]` for the residual phase:
/// `psi_i = i pi / 2^(B+1) + pi / 2^(B+2)`, `0 <= i < 2^B`.
#[derive(Debug, Clone)]
pub struct PhaseCodebook {
    bits: u32,
    entries: Vec<f64>,
}

impl PhaseCodebook {
    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Largest possible quantization error, `pi / 2^(B+2)`.
    pub fn max_error(&self) -> f64 {
        std::f64::consts::PI / 2f64.powi(self.bits as i32 + 2)
    }
}

/// Build the B-bit phase codebook. `B = 0` yields the single entry `pi/4`.
pub fn phase_codebook(bits: u32) -> PhaseCodebook {
    let count = 1usize << bits;
    let spacing = std::f64::consts::PI / 2f64.powi(bits as i32 + 1);
    let offset = std::f64::consts::PI / 2f64.powi(bits as i32 + 2);
    let entries = (0..count).map(|i| i as f64 * spacing + offset).collect();
    PhaseCodebook { bits, entries }
}

/// Quantize `angle` (any finite value) against the phase codebook.
///
/// The angle is first reduced modulo `pi/2`; the return value is
/// `(index, psi_hat, theta)` with `theta = psi_hat - mod(angle, pi/2)`,
/// bounded by `|theta| <= pi / 2^(B+2)`. Equidistant entries resolve to the
/// lower index.
pub fn quantize_residual_phase(angle: f64, cb: &PhaseCodebook) -> (usize, f64, f64) {
    let reduced = angle.rem_euclid(FRAC_PI_2);
    let mut best = 0usize;
    let mut best_dist = f64::INFINITY;
    for (i, &psi) in cb.entries.iter().enumerate() {
        let dist = (reduced - psi).abs();
        if dist < best_dist {
            best_dist = dist;
            best = i;
        }
    }
    let psi_hat = cb.entries[best];
    (best, psi_hat, psi_hat - reduced)
}

/// Random vector quantization codebook: `2^B` independent isotropic unit
/// vectors in dimension `Nt`.
#[derive(Debug, Clone)]
pub struct RvqCodebook {
    bits: u32,
    dimension: usize,
    codewords: Vec<Vec<Complex64>>,
}

impl RvqCodebook {
    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn codeword(&self, i: usize) -> &[Complex64] {
        &self.codewords[i]
    }

    pub fn codewords(&self) -> &[Vec<Complex64>] {
        &self.codewords
    }
}

/// Draw a fresh RVQ codebook: normalized IID complex Gaussian vectors are
/// isotropic on the unit sphere.
pub fn rvq_codebook(nt: usize, bits: u32, rng: &mut SampleRng) -> Result<RvqCodebook> {
    if nt < 2 {
        return Err(Error::Domain(format!(
            "RVQ codebook requires Nt >= 2, got {nt}"
        )));
    }
    let count = 1usize << bits;
    let codewords = (0..count)
        .map(|_| normalize(&rng.complex_gaussian_vec(nt)))
        .collect();
    Ok(RvqCodebook {
        bits,
        dimension: nt,
        codewords,
    })
}

/// Index of the codeword maximizing `|h^* w|` (ties to the lower index).
pub fn select_miso(h: &[Complex64], cb: &RvqCodebook) -> Result<usize> {
    if h.len() != cb.dimension {
        return Err(Error::Dimension(format!(
            "channel has {} entries, codebook dimension is {}",
            h.len(),
            cb.dimension
        )));
    }
    let mut best = 0usize;
    let mut best_metric = -1.0f64;
    for (i, w) in cb.codewords.iter().enumerate() {
        let metric = inner(h, w).norm_sqr();
        if metric > best_metric {
            best_metric = metric;
            best = i;
        }
    }
    Ok(best)
}

/// Index of the candidate beamformer maximizing the per-antenna SQNR sum
/// `sum_i (1-eta) gamma |h_i^* v|^2 / (eta gamma |h_i^* v|^2 + 1)`.
///
/// `h_matrix` rows are `h_i^*`; `candidates` is the codebook, optionally
/// extended by the leading eigenvector for the perfect-CSIT variant.
pub fn select_mimo(
    h_matrix: &CMatrix,
    candidates: &[Vec<Complex64>],
    gamma: f64,
    resolution: Resolution,
) -> Result<usize> {
    if !gamma.is_finite() || gamma < 0.0 {
        return Err(Error::Domain(format!(
            "SNR must be nonnegative, got {gamma}"
        )));
    }
    if candidates.is_empty() {
        return Err(Error::Domain("empty candidate set".into()));
    }
    let eta = resolution.nmse();
    let mut best = 0usize;
    let mut best_metric = -1.0f64;
    for (i, v) in candidates.iter().enumerate() {
        if v.len() != h_matrix.cols() {
            return Err(Error::Dimension(format!(
                "candidate {i} has length {}, channel has {} columns",
                v.len(),
                h_matrix.cols()
            )));
        }
        let hv = h_matrix.mul_vec(v);
        let metric: f64 = hv
            .iter()
            .map(|g| {
                let s = gamma * g.norm_sqr();
                (1.0 - eta) * s / (eta * s + 1.0)
            })
            .sum();
        if metric > best_metric {
            best_metric = metric;
            best = i;
        }
    }
    Ok(best)
}

/// Matched-filter beamformer `h / ||h||`.
pub fn conjugate_beamformer(h: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = norm(h);
    if !n.is_finite() || n <= 0.0 {
        return Err(Error::Domain("cannot beamform along a zero channel".into()));
    }
    Ok(h.iter().map(|z| z / n).collect())
}

/// Leading eigenvector of `H^H H`, the low-SNR-optimal beamformer.
pub fn eigen_beamformer(h_matrix: &CMatrix) -> Result<Vec<Complex64>> {
    let gram = h_matrix.conj_transpose().mul(h_matrix).hermitianize();
    let (v, _) = leading_eigenvector(&gram)?;
    Ok(v)
}

/// Tolerance on residual cross-user leakage of the zero-forcing solution.
const ZF_ORTHOGONALITY_TOL: f64 = 1e-10;
/// Singular values below this fraction of the largest imply rank deficiency.
const ZF_RANK_TOL: f64 = 1e-10;

/// Zero-forcing beamformers from a K x Nt matrix of quantized channel
/// directions (rows are `hhat_k^*`).
///
/// Column `i` of the normalized pseudo-inverse satisfies
/// `hhat_k^* v_i = 0` for `k != i` to within 1e-10, each `v_i` unit norm.
/// A rank-deficient direction matrix (duplicate quantized directions) is a
/// precoding failure rather than something to regularize away.
pub fn zf_precoder(hhat: &CMatrix) -> Result<Vec<Vec<Complex64>>> {
    let k = hhat.rows();
    let nt = hhat.cols();
    if k == 0 || k > nt {
        return Err(Error::Dimension(format!(
            "zero forcing needs 1 <= K <= Nt, got K={k}, Nt={nt}"
        )));
    }
    // Gram matrix of the directions; its eigenvalues are the squared
    // singular values of hhat.
    let gram = {
        let mut g = CMatrix::zeros(k, k);
        for a in 0..k {
            for b in 0..k {
                g[(a, b)] = hhat
                    .row(a)
                    .iter()
                    .zip(hhat.row(b))
                    .map(|(x, y)| x * y.conj())
                    .sum();
            }
        }
        g.hermitianize()
    };
    let factor = cholesky(&gram).ok_or_else(|| {
        Error::PrecodingFailure("quantized direction matrix is rank deficient".into())
    })?;
    if k > 1 {
        let (lambda_min, lambda_max) = crate::numerics::eigen_extremes(&gram)?;
        if lambda_min < ZF_RANK_TOL * ZF_RANK_TOL * lambda_max {
            return Err(Error::PrecodingFailure(format!(
                "singular value ratio {:.3e} below tolerance",
                (lambda_min.max(0.0) / lambda_max).sqrt()
            )));
        }
    }

    // v_i ~ hhat^H (gram)^{-1} e_i, normalized.
    let mut beams = Vec::with_capacity(k);
    for i in 0..k {
        let mut e = vec![Complex64::new(0.0, 0.0); k];
        e[i] = Complex64::new(1.0, 0.0);
        let y = factor.solve(&e);
        let mut v = vec![Complex64::new(0.0, 0.0); nt];
        for (a, ya) in y.iter().enumerate() {
            for (t, val) in v.iter_mut().enumerate() {
                *val += hhat[(a, t)].conj() * ya;
            }
        }
        beams.push(normalize(&v));
    }

    for (i, v) in beams.iter().enumerate() {
        for a in 0..k {
            if a == i {
                continue;
            }
            let leak: Complex64 = hhat.row(a).iter().zip(v).map(|(x, y)| x * y).sum();
            if leak.norm() > ZF_ORTHOGONALITY_TOL {
                return Err(Error::PrecodingFailure(format!(
                    "residual leakage {:.3e} between users {a} and {i}",
                    leak.norm()
                )));
            }
        }
    }
    Ok(beams)
}
