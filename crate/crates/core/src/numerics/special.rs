//! Scalar special functions used by the rate expressions.

use crate::error::{Error, Result};

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Upper-tail probability of the standard normal distribution.
///
/// Evaluated as `erfc(x/sqrt(2))/2` rather than `1 - cdf(x)`, which cancels
/// catastrophically past `x ~ 6`. The result is clamped into the open
/// interval (0, 1) so downstream entropies never see an exact 0 or 1.
pub fn q_function(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!(
            "q_function requires finite x, got {x}"
        )));
    }
    Ok(q_unchecked(x))
}

pub(crate) fn q_unchecked(x: f64) -> f64 {
    let q = 0.5 * libm::erfc(x * FRAC_1_SQRT_2);
    if q <= 0.0 {
        f64::MIN_POSITIVE
    } else if q >= 1.0 {
        1.0 - f64::EPSILON / 2.0
    } else {
        q
    }
}

/// Binary entropy in bits, with the convention `0 log 0 = 0`.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!(
            "binary_entropy requires p in [0, 1], got {p}"
        )));
    }
    Ok(h2_unchecked(p))
}

pub(crate) fn h2_unchecked(p: f64) -> f64 {
    let term = |t: f64| if t > 0.0 { -t * t.log2() } else { 0.0 };
    term(p) + term(1.0 - p)
}

/// Natural log of the gamma function.
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma_r(x).0
}

/// The codebook-average misalignment factor `2^B * Beta(2^B, Nt/(Nt-1))`.
///
/// Equals the expected residual `sin^2` angle between an isotropic channel
/// direction and the best of `2^B` random codewords. Computed through
/// log-gamma differences so `2^B` never overflows.
pub fn rvq_expectation_term(fb_bits: u32, nt: usize) -> Result<f64> {
    if nt < 2 {
        return Err(Error::Domain(format!(
            "rvq_expectation_term requires Nt >= 2, got {nt}"
        )));
    }
    let n = 2f64.powi(fb_bits as i32); // 2^B, exact in f64
    let z = nt as f64 / (nt as f64 - 1.0);
    // 2^B * Beta(2^B, z) = exp(B ln2 + lnG(2^B) + lnG(z) - lnG(2^B + z))
    let log_val =
        (fb_bits as f64) * std::f64::consts::LN_2 + ln_gamma(n) + ln_gamma(z) - ln_gamma(n + z);
    Ok(log_val.exp())
}
