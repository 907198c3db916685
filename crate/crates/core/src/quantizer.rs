//! The b-bit uniform ADC model.
//!
//! Each complex sample is quantized by two identical b-bit converters acting
//! on the real and imaginary parts. Stepsizes are matched to the measured
//! per-component input power (ideal AGC), cells saturate at `2^(b-1)` and
//! reconstruction points sit mid-cell.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::RngStream;

/// ADC resolution: a finite bit count or the full-precision limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Resolution {
    Bits(u8),
    Infinite,
}

impl Resolution {
    /// Distortion factor: the tabulated NMSE, or 0 for full precision.
    pub fn nmse(self) -> f64 {
        match self {
            Resolution::Bits(b) => AdcSpec::new(b).expect("validated resolution").nmse,
            Resolution::Infinite => 0.0,
        }
    }

    /// The linear gain `1 - eta_b` of the decomposed quantizer output.
    pub fn bussgang_gain(self) -> f64 {
        1.0 - self.nmse()
    }
}

impl std::fmt::Display for Resolution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Resolution::Bits(b) => write!(f, "{b}"),
            Resolution::Infinite => write!(f, "inf"),
        }
    }
}

/// One row of the quantizer constants table: resolution, stepsize for a
/// unit-power input, and normalized mean squared error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdcSpec {
    pub bits: u8,
    pub stepsize: f64,
    pub nmse: f64,
}

/// Tabulated (stepsize, NMSE) for b = 2..8. The 1-bit entries have closed
/// forms and are generated, not tabulated, so quantities like 2/pi stay
/// exact downstream.
const TABLE: [(f64, f64); 7] = [
    (0.9957, 0.1175),     // b = 2
    (0.586, 0.03454),     // b = 3
    (0.3352, 0.009497),   // b = 4
    (0.1881, 0.002499),   // b = 5
    (0.1041, 0.0006642),  // b = 6
    (0.0569, 0.0001660),  // b = 7
    (0.0308, 0.00004151), // b = 8
];

impl AdcSpec {
    /// The constants row for a `b`-bit converter, `1 <= b <= 8`.
    pub fn new(bits: u8) -> Result<Self> {
        match bits {
            1 => Ok(Self {
                bits: 1,
                stepsize: (8.0 / std::f64::consts::PI).sqrt(),
                nmse: (std::f64::consts::PI - 2.0) / std::f64::consts::PI,
            }),
            2..=8 => {
                let (stepsize, nmse) = TABLE[bits as usize - 2];
                Ok(Self {
                    bits,
                    stepsize,
                    nmse,
                })
            }
            _ => Err(Error::Domain(format!(
                "ADC resolution must be 1..=8 bits, got {bits}"
            ))),
        }
    }

    /// `1 - eta_b`, the scale of the signal part of the quantizer output.
    pub fn bussgang_gain(&self) -> f64 {
        1.0 - self.nmse
    }

    /// Number of reconstruction levels per real component.
    pub fn levels(&self) -> u32 {
        1 << self.bits
    }
}

/// Quantize one real component: stepsize `delta`, saturation at `max_cell`.
/// Zero is assigned sign +1 (deterministic tie-break on a measure-zero set).
fn quantize_component(x: f64, delta: f64, max_cell: u32) -> f64 {
    let sign = if x < 0.0 { -1.0 } else { 1.0 };
    let cell = (x.abs() / delta).ceil().max(1.0).min(max_cell as f64);
    sign * (cell - 0.5) * delta
}

/// Quantize a complex sample with a `b`-bit converter per component.
///
/// `re_power` and `im_power` are the AGC-measured component powers
/// `E[Re(x)^2]` and `E[Im(x)^2]`; the component stepsize is
/// `stepsize * sqrt(power)`.
pub fn quantize(x: Complex64, spec: &AdcSpec, re_power: f64, im_power: f64) -> Result<Complex64> {
    if re_power.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater)
        || im_power.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater)
    {
        return Err(Error::Domain(format!(
            "component powers must be positive, got ({re_power}, {im_power})"
        )));
    }
    let max_cell = 1u32 << (spec.bits - 1);
    let re = quantize_component(x.re, spec.stepsize * re_power.sqrt(), max_cell);
    let im = quantize_component(x.im, spec.stepsize * im_power.sqrt(), max_cell);
    Ok(Complex64::new(re, im))
}

/// The 1-bit special case: output components are `±sqrt(2/pi) * sqrt(power)`.
pub fn quantize_one_bit(x: Complex64, re_power: f64, im_power: f64) -> Result<Complex64> {
    if re_power.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater)
        || im_power.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater)
    {
        return Err(Error::Domain(format!(
            "component powers must be positive, got ({re_power}, {im_power})"
        )));
    }
    let amp = (2.0 / std::f64::consts::PI).sqrt();
    let sign = |t: f64| if t < 0.0 { -1.0 } else { 1.0 };
    Ok(Complex64::new(
        sign(x.re) * amp * re_power.sqrt(),
        sign(x.im) * amp * im_power.sqrt(),
    ))
}

/// Variance of the quantization-noise part of the decomposed output,
/// `eta_b (1 - eta_b) E[|y|^2]`.
pub fn quantization_noise_variance(spec: &AdcSpec, input_power: f64) -> f64 {
    spec.nmse * (1.0 - spec.nmse) * input_power
}

/// Monte Carlo NMSE of the b-bit quantizer on unit-variance circularly
/// symmetric Gaussian input. Serves as the sampling oracle for the constants
/// table.
pub fn estimate_nmse(bits: u8, num_samples: u64, seed: u64) -> Result<f64> {
    let spec = AdcSpec::new(bits)?;
    estimate_nmse_with_spec(&spec, num_samples, seed)
}

/// As [`estimate_nmse`] but for an arbitrary (possibly perturbed) spec.
pub fn estimate_nmse_with_spec(spec: &AdcSpec, num_samples: u64, seed: u64) -> Result<f64> {
    let mut rng = RngStream::new(seed, 0).substream(0xAD0);
    let mut err = 0.0f64;
    let mut pow = 0.0f64;
    for _ in 0..num_samples {
        let z = rng.complex_gaussian();
        let q = quantize(z, spec, 0.5, 0.5)?;
        err += (q - z).norm_sqr();
        pow += z.norm_sqr();
    }
    Ok(err / pow)
}
