//! Achievable-rate expressions and the closed-form power/rate-loss bounds.
//!
//! Conventions: noise power is normalized to one, so the transmit SNR
//! `gamma = Pt` is the only power knob; multi-user links split it evenly,
//! `rho = gamma / K`. 1-bit links carry QPSK and their rates are counted
//! per complex channel use (2 bits/s/Hz ceiling); multi-bit links assume
//! Gaussian signaling with the quantization noise treated as worst-case
//! Gaussian, which makes every multi-bit expression an achievable lower
//! bound.

use num_complex::Complex64;

use crate::correlation::{quantized_covariance_exact, CorrelationMap};
use crate::error::{Error, Result};
use crate::numerics::{
    h2_unchecked, hermitian_quadratic_solve, inner, norm, norm_sqr, q_unchecked, CMatrix,
};
use crate::quantizer::Resolution;

/// Power and feedback parameters of one link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    /// Linear transmit SNR `Pt / sigma_n^2`.
    pub gamma: f64,
    pub nt: usize,
    pub nr: usize,
    /// Number of users (1 for single-user links).
    pub users: usize,
    pub resolution: Resolution,
    /// Channel-direction feedback bits (B or B1).
    pub fb_direction: u32,
    /// Residual-phase feedback bits (B2, 1-bit links only).
    pub fb_phase: u32,
}

impl LinkBudget {
    /// Per-user linear SNR `gamma / K`.
    pub fn rho(&self) -> f64 {
        self.gamma / self.users as f64
    }

    /// Total feedback bits per user.
    pub fn fb_total(&self) -> u32 {
        self.fb_direction + self.fb_phase
    }
}

/// Rate of one link evaluation; multi-user links carry per-user components.
#[derive(Debug, Clone, PartialEq)]
pub struct RateResult {
    /// bits/s/Hz (per user for multi-user links).
    pub rate: f64,
    pub per_user: Vec<f64>,
    pub method: &'static str,
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

pub fn db_to_linear(x_db: f64) -> f64 {
    10f64.powf(x_db / 10.0)
}

fn validate_unit_beam(v: &[Complex64]) -> Result<()> {
    let n = norm(v);
    if (n - 1.0).abs() > 1e-6 {
        return Err(Error::Domain(format!(
            "beamformer must be unit norm, got ||v|| = {n}"
        )));
    }
    Ok(())
}

/// QPSK rate of a 1-bit-quantized scalar channel with effective SNR
/// `snr_eff = gamma |h|^2` and residual phase error `theta`:
///
/// `2 - H(Q(sqrt(s (1 - sin 2 theta)))) - H(Q(sqrt(s (1 + sin 2 theta))))`.
///
/// `theta = 0` is the perfect-CSIT capacity `2 (1 - H(Q(sqrt(s))))`.
pub fn rate_siso_1bit(snr_eff: f64, theta: f64) -> Result<f64> {
    if !snr_eff.is_finite() || snr_eff < 0.0 {
        return Err(Error::Domain(format!(
            "effective SNR must be nonnegative, got {snr_eff}"
        )));
    }
    if theta.abs() > std::f64::consts::FRAC_PI_4 + 1e-12 {
        return Err(Error::Domain(format!(
            "residual phase error must satisfy |theta| <= pi/4, got {theta}"
        )));
    }
    let s2t = (2.0 * theta).sin();
    let low = (snr_eff * (1.0 - s2t)).max(0.0);
    let high = snr_eff * (1.0 + s2t);
    Ok(2.0 - h2_unchecked(q_unchecked(low.sqrt())) - h2_unchecked(q_unchecked(high.sqrt())))
}

/// 1-bit MISO rate under beamforming `v` and residual phase error `theta`:
/// the scalar rate at `snr_eff = gamma |h^* v|^2 = gamma ||h||^2 cos^2 beta`.
pub fn rate_miso_1bit(gamma: f64, h: &[Complex64], v: &[Complex64], theta: f64) -> Result<f64> {
    if h.len() != v.len() {
        return Err(Error::Dimension(format!(
            "channel has {} entries, beamformer {}",
            h.len(),
            v.len()
        )));
    }
    if !gamma.is_finite() || gamma < 0.0 {
        return Err(Error::Domain(format!(
            "SNR must be nonnegative, got {gamma}"
        )));
    }
    validate_unit_beam(v)?;
    rate_siso_1bit(gamma * inner(h, v).norm_sqr(), theta)
}

/// Multi-bit SQNR rate `log2(1 + (1-eta) g s / (eta g s + 1))` with
/// `s = gamma * gain`, `gain = |h^* v|^2`.
pub fn rate_miso_multibit(gamma: f64, gain: f64, resolution: Resolution) -> f64 {
    let eta = resolution.nmse();
    let s = gamma * gain;
    (1.0 + (1.0 - eta) * s / (eta * s + 1.0)).log2()
}

/// Ensemble upper bound with perfect CSIT and conjugate beamforming:
/// the SQNR rate at the average gain `E[||h||^2] = Nt`.
pub fn rate_miso_multibit_avg_csit(gamma: f64, nt: usize, resolution: Resolution) -> f64 {
    rate_miso_multibit(gamma, nt as f64, resolution)
}

/// RVQ limited-feedback rate approximation using the exact beta-function
/// alignment `E[cos^2] = 1 - 2^B Beta(2^B, Nt/(Nt-1))`.
pub fn rate_miso_multibit_rvq_approx(
    gamma: f64,
    nt: usize,
    fb_bits: u32,
    resolution: Resolution,
) -> Result<f64> {
    let miss = crate::numerics::rvq_expectation_term(fb_bits, nt)?;
    Ok(rate_miso_multibit(
        gamma,
        nt as f64 * (1.0 - miss),
        resolution,
    ))
}

/// Closed-form RVQ lower bound with the alignment replaced by
/// `1 - 2^(-B/(Nt-1))`.
pub fn rate_miso_multibit_rvq_bound(
    gamma: f64,
    nt: usize,
    fb_bits: u32,
    resolution: Resolution,
) -> Result<f64> {
    if nt < 2 {
        return Err(Error::Domain(format!(
            "RVQ bound requires Nt >= 2, got {nt}"
        )));
    }
    let aligned = 1.0 - 2f64.powf(-(fb_bits as f64) / (nt as f64 - 1.0));
    Ok(rate_miso_multibit(gamma, nt as f64 * aligned, resolution))
}

/// Low-SNR power offset of RVQ feedback relative to perfect CSIT,
/// `10 log10(1 - 2^(-B/(Nt-1)))` dB.
pub fn rvq_low_snr_power_loss_db(nt: usize, fb_bits: u32) -> Result<f64> {
    if nt < 2 {
        return Err(Error::Domain(format!("requires Nt >= 2, got {nt}")));
    }
    Ok(linear_to_db(
        1.0 - 2f64.powf(-(fb_bits as f64) / (nt as f64 - 1.0)),
    ))
}

/// Which effective-noise covariance the exact MIMO bound inverts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MimoNoiseConvention {
    /// `C_rr - g^2 gamma H v v^* H^*`: the transmit power scales the
    /// subtracted signal covariance, as the linearized model requires.
    PowerConsistent,
    /// `C_rr - g^2 H v v^* H^*` without the power factor, kept for
    /// comparison against the expression as printed.
    AsPrinted,
}

/// Exact achievable-rate lower bound of the quantized MIMO link:
/// `log2(1 + gamma g^2 (Hv)^H C_n^{-1} (Hv))` where `C_n` is the effective
/// noise covariance built from the exact quantized covariance `C_rr`.
pub fn rate_mimo_exact(
    h_matrix: &CMatrix,
    v: &[Complex64],
    gamma: f64,
    map: &CorrelationMap,
) -> Result<f64> {
    rate_mimo_exact_with(
        h_matrix,
        v,
        gamma,
        map,
        MimoNoiseConvention::PowerConsistent,
    )
}

/// As [`rate_mimo_exact`] with an explicit noise-covariance convention.
pub fn rate_mimo_exact_with(
    h_matrix: &CMatrix,
    v: &[Complex64],
    gamma: f64,
    map: &CorrelationMap,
    convention: MimoNoiseConvention,
) -> Result<f64> {
    if h_matrix.cols() != v.len() {
        return Err(Error::Dimension(format!(
            "channel is {}x{}, beamformer has {} entries",
            h_matrix.rows(),
            h_matrix.cols(),
            v.len()
        )));
    }
    if !gamma.is_finite() || gamma < 0.0 {
        return Err(Error::Domain(format!(
            "SNR must be nonnegative, got {gamma}"
        )));
    }
    validate_unit_beam(v)?;
    let hv = h_matrix.mul_vec(v);
    if gamma == 0.0 {
        return Ok(0.0);
    }
    if let Resolution::Infinite = map.resolution() {
        return Ok((1.0 + gamma * norm_sqr(&hv)).log2());
    }
    let nr = hv.len();
    let c_yy = CMatrix::outer(&hv, &hv)
        .scale(gamma)
        .add(&CMatrix::identity(nr));
    let qc = quantized_covariance_exact(&c_yy, map)?;
    let g = qc.gain;
    let c_n = match convention {
        MimoNoiseConvention::PowerConsistent => {
            // C_QQ + g^2 I = C_rr - g^2 gamma (Hv)(Hv)^H
            let mut m = qc.c_qq;
            for i in 0..nr {
                m[(i, i)] += Complex64::new(g * g, 0.0);
            }
            m
        }
        MimoNoiseConvention::AsPrinted => qc.c_rr.sub(&CMatrix::outer(&hv, &hv).scale(g * g)),
    };
    let quad = hermitian_quadratic_solve(&c_n.hermitianize(), &hv)?;
    Ok((1.0 + gamma * g * g * quad).log2())
}

/// Diagonal-approximation achievable rate of the quantized MIMO link:
/// `log2(1 + sum_i (1-eta) gamma |h_i^* v|^2 / (eta gamma |h_i^* v|^2 + 1))`.
pub fn rate_mimo_approx(
    h_matrix: &CMatrix,
    v: &[Complex64],
    gamma: f64,
    resolution: Resolution,
) -> Result<f64> {
    if h_matrix.cols() != v.len() {
        return Err(Error::Dimension(format!(
            "channel is {}x{}, beamformer has {} entries",
            h_matrix.rows(),
            h_matrix.cols(),
            v.len()
        )));
    }
    if !gamma.is_finite() || gamma < 0.0 {
        return Err(Error::Domain(format!(
            "SNR must be nonnegative, got {gamma}"
        )));
    }
    validate_unit_beam(v)?;
    let eta = resolution.nmse();
    let sum: f64 = h_matrix
        .mul_vec(v)
        .iter()
        .map(|g| {
            let s = gamma * g.norm_sqr();
            (1.0 - eta) * s / (eta * s + 1.0)
        })
        .sum();
    Ok((1.0 + sum).log2())
}

/// Per-user rates of the zero-forcing multi-user downlink. `h_matrix` rows
/// are the true channels `h_k^*`; `beams` are the unit-norm precoders; the
/// SIQNR of user `k` is
/// `(1-eta) rho |h_k^* v_k|^2 /
///  (eta rho |h_k^* v_k|^2 + rho sum_{i != k} |h_k^* v_i|^2 + 1)`.
pub fn rate_mu_zf(
    h_matrix: &CMatrix,
    beams: &[Vec<Complex64>],
    rho: f64,
    resolution: Resolution,
) -> Result<RateResult> {
    let k_users = h_matrix.rows();
    if beams.len() != k_users {
        return Err(Error::Dimension(format!(
            "{} beams for {} users",
            beams.len(),
            k_users
        )));
    }
    if !rho.is_finite() || rho < 0.0 {
        return Err(Error::Domain(format!(
            "per-user SNR must be nonnegative, got {rho}"
        )));
    }
    for v in beams {
        if v.len() != h_matrix.cols() {
            return Err(Error::Dimension(format!(
                "beam has {} entries, channel has {} columns",
                v.len(),
                h_matrix.cols()
            )));
        }
        validate_unit_beam(v)?;
    }
    let eta = resolution.nmse();
    // gains[i][k] = |h_k^* v_i|^2
    let gains: Vec<Vec<f64>> = beams
        .iter()
        .map(|v| h_matrix.mul_vec(v).iter().map(|z| z.norm_sqr()).collect())
        .collect();
    let per_user: Vec<f64> = (0..k_users)
        .map(|k| {
            let signal = rho * gains[k][k];
            let interference: f64 = (0..k_users)
                .filter(|&i| i != k)
                .map(|i| rho * gains[i][k])
                .sum();
            (1.0 + (1.0 - eta) * signal / (eta * signal + interference + 1.0)).log2()
        })
        .collect();
    let rate = per_user.iter().sum::<f64>() / k_users as f64;
    Ok(RateResult {
        rate,
        per_user,
        method: "mu-zf-siqnr",
    })
}

/// Worst-case and average power retention of B-bit residual-phase feedback.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePowerLoss {
    /// `1 - sin(pi / 2^(B+1))`, the floor over the error interval.
    pub worst_case: f64,
    /// `1 - sin^2(pi/2^(B+2)) / (pi/2^(B+2))`, the mean over a uniform error.
    pub average: f64,
}

impl PhasePowerLoss {
    pub fn worst_case_db(&self) -> f64 {
        linear_to_db(self.worst_case)
    }

    pub fn average_db(&self) -> f64 {
        linear_to_db(self.average)
    }
}

/// Power retention `E[1 - sin 2|theta|]` of the B-bit phase codebook.
pub fn bound_phase_power_loss(fb_bits: u32) -> PhasePowerLoss {
    let half_cell = std::f64::consts::PI / 2f64.powi(fb_bits as i32 + 2);
    PhasePowerLoss {
        worst_case: 1.0 - (2.0 * half_cell).sin(),
        average: 1.0 - half_cell.sin().powi(2) / half_cell,
    }
}

/// Combined direction-plus-phase power retention bound
/// `(1 - 2^(-B1/(Nt-1))) (1 - 2^(-B2))`.
pub fn bound_miso_power_loss(fb_direction: u32, fb_phase: u32, nt: usize) -> Result<f64> {
    if nt < 2 {
        return Err(Error::Domain(format!("requires Nt >= 2, got {nt}")));
    }
    let dir = 1.0 - 2f64.powf(-(fb_direction as f64) / (nt as f64 - 1.0));
    let phase = 1.0 - 2f64.powf(-(fb_phase as f64));
    Ok(dir * phase)
}

/// Solve `H(Q(sqrt(delta))) = epsilon` for `delta` by bisection on [0, 40].
///
/// `epsilon` is half the tolerated 1-bit rate loss; `epsilon = 0.1` gives
/// `delta ~= 5`.
pub fn solve_rate_loss_threshold(epsilon: f64) -> Result<f64> {
    let h_at = |delta: f64| h2_unchecked(q_unchecked(delta.sqrt()));
    let (mut lo, mut hi) = (0.0f64, 40.0f64);
    if epsilon >= h_at(lo) || epsilon <= h_at(hi) {
        return Err(Error::Domain(format!(
            "epsilon must lie in ({:.3e}, 1), got {epsilon}",
            h_at(hi)
        )));
    }
    // H(Q(sqrt(delta))) is strictly decreasing in delta.
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        if h_at(mid) > epsilon {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Does the feedback split `(B1, B2)` keep the expected 1-bit MISO rate
/// loss below `2 epsilon` bits/s/Hz at transmit SNR `gamma`? Tests
/// `(1 - 2^(-B1/(Nt-1))) (1 - 2^(-B2)) >= delta / (gamma Nt)`.
pub fn miso_feedback_sufficient(
    fb_direction: u32,
    fb_phase: u32,
    nt: usize,
    gamma: f64,
    epsilon: f64,
) -> Result<bool> {
    if !gamma.is_finite() || gamma <= 0.0 {
        return Err(Error::Domain(format!("SNR must be positive, got {gamma}")));
    }
    let bound = bound_miso_power_loss(fb_direction, fb_phase, nt)?;
    let delta = solve_rate_loss_threshold(epsilon)?;
    Ok(bound >= delta / (gamma * nt as f64))
}

/// The multi-user rate-loss upper bound and its limiting forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuRateLoss {
    /// `Delta R` at the requested per-user SNR.
    pub rate_loss: f64,
    /// `(Nt-K+1)(1 - 2^(-B/(Nt-1)))` — residual signal coefficient.
    pub c1: f64,
    /// `(K-1) Nt/(Nt-1) 2^(-B/(Nt-1))` — interference coefficient.
    pub c2: f64,
    /// High-SNR limit `log2(1 + (1-eta)/eta * 1/(C1/C2 + 1))`.
    pub high_snr_limit: f64,
    /// Low-SNR power offset `10 log10(1 - 2^(-B/(Nt-1)))` dB.
    pub low_snr_power_loss_db: f64,
}

/// Upper bound on the per-user rate loss of quantized-direction zero
/// forcing relative to perfect-CSIT zero forcing.
pub fn bound_mu_rate_loss(
    resolution: Resolution,
    fb_bits: u32,
    nt: usize,
    users: usize,
    rho: f64,
) -> Result<MuRateLoss> {
    if nt < 2 || users < 2 || users > nt {
        return Err(Error::Domain(format!(
            "requires 2 <= K <= Nt with Nt >= 2, got K={users}, Nt={nt}"
        )));
    }
    if !rho.is_finite() || rho < 0.0 {
        return Err(Error::Domain(format!(
            "per-user SNR must be nonnegative, got {rho}"
        )));
    }
    let eta = resolution.nmse();
    let m = (nt - users + 1) as f64;
    let x = 2f64.powf(-(fb_bits as f64) / (nt as f64 - 1.0));
    let c1 = m * (1.0 - x);
    let c2 = (users as f64 - 1.0) * nt as f64 / (nt as f64 - 1.0) * x;
    let csit = (1.0 + (1.0 - eta) * rho * m / (eta * rho * m + 1.0)).log2();
    let fb = (1.0 + (1.0 - eta) * rho * c1 / (eta * rho * c1 + rho * c2 + 1.0)).log2();
    let high_snr_limit = if eta > 0.0 && c2 > 0.0 {
        (1.0 + (1.0 - eta) / eta / (c1 / c2 + 1.0)).log2()
    } else if c2 > 0.0 {
        f64::INFINITY
    } else {
        0.0
    };
    Ok(MuRateLoss {
        rate_loss: csit - fb,
        c1,
        c2,
        high_snr_limit,
        low_snr_power_loss_db: linear_to_db(1.0 - x),
    })
}

/// The feedback budget that keeps the multi-user high-SNR rate loss
/// constant as the ADC resolution grows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScalingLaw {
    /// `Delta B / Delta b = 2 (Nt - 1)`.
    pub slope_bits_per_adc_bit: u32,
    /// `B = 2 (Nt-1) b + anchor` evaluated at the requested resolution.
    pub fb_bits: i64,
}

/// Evaluate the feedback scaling rule at ADC resolution `bits` with the
/// given anchor constant. Valid for `b >= 3`, where
/// `eta_b ~= (pi sqrt(3)/2) 2^(-2b)` holds.
pub fn feedback_bits_for_rate_loss(bits: u8, nt: usize, anchor: i64) -> Result<ScalingLaw> {
    if bits < 3 {
        return Err(Error::Domain(format!(
            "scaling law assumes b >= 3 (high-resolution NMSE regime), got {bits}"
        )));
    }
    if nt < 2 {
        return Err(Error::Domain(format!("requires Nt >= 2, got {nt}")));
    }
    let slope = 2 * (nt as u32 - 1);
    Ok(ScalingLaw {
        slope_bits_per_adc_bit: slope,
        fb_bits: slope as i64 * bits as i64 + anchor,
    })
}

/// The constant whose boundedness the scaling law preserves:
/// `2^(2 (b - B / (2 (Nt-1))))`.
pub fn scaling_gap_exponent(bits: u8, fb_bits: u32, nt: usize) -> f64 {
    2f64.powf(2.0 * (bits as f64 - fb_bits as f64 / (2.0 * (nt as f64 - 1.0))))
}
