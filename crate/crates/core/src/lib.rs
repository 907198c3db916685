//! Achievable rates of single- and multi-user MIMO links whose receivers use
//! few-bit ADCs and whose transmitters learn the channel through a handful of
//! feedback bits.
//!
//! The crate is organised around the processing chain of such a link:
//!
//! * [`numerics`] — Q-function, binary entropy, beta-ratio helpers, complex
//!   linear algebra and seeded random sampling,
//! * [`quantizer`] — the b-bit uniform ADC model and its distortion constants,
//! * [`correlation`] — the correlation transfer function of the quantizer and
//!   the covariance of quantized signal vectors,
//! * [`codebook`] — feedback codebooks (residual phase, random vector
//!   quantization) and beamformer selection / zero-forcing precoding,
//! * [`rate`] — closed-form achievable rates and power/rate-loss bounds,
//! * [`simulate`] — the Monte Carlo sweep engine with preset experiments.

pub mod codebook;
pub mod correlation;
pub mod error;
pub mod numerics;
pub mod quantizer;
pub mod rate;
pub mod simulate;

pub use error::{Error, Result};
pub use num_complex::Complex64;
