//! Seeded, splittable random sampling.
//!
//! Monte Carlo trials must be reproducible independently of evaluation order,
//! so every random quantity is drawn from a generator keyed by
//! `(master seed, stream index, substream tag)`. Equal keys give equal
//! sequences; distinct keys give statistically independent sequences.

use num_complex::Complex64;
use rand_core::{RngCore, SeedableRng};

/// A value identifying one random stream of an experiment (one trial).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RngStream {
    seed: u64,
    stream: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        Self { seed, stream }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// Sampler for substream `tag` of this stream. Substreams let one trial
    /// draw its channel and its codebooks from independent sequences.
    pub fn substream(&self, tag: u64) -> SampleRng {
        SampleRng::from_key(self.seed, self.stream, tag)
    }

    /// Sampler for the default substream.
    pub fn sampler(&self) -> SampleRng {
        self.substream(0)
    }
}

/// Sampling front-end over a counter-based generator.
pub struct SampleRng {
    inner: rand_chacha::ChaCha8Rng,
}

impl SampleRng {
    fn from_key(seed: u64, stream: u64, tag: u64) -> Self {
        // Expand the key into 32 seed bytes with a SplitMix64 chain.
        let mut state = seed ^ 0x9e37_79b9_7f4a_7c15;
        let mut next = |salt: u64| -> u64 {
            state = state.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(salt);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
            z ^ (z >> 31)
        };
        let words = [
            next(stream),
            next(tag),
            next(stream ^ tag.rotate_left(17)),
            next(0),
        ];
        let mut bytes = [0u8; 32];
        for (chunk, w) in bytes.chunks_exact_mut(8).zip(words) {
            chunk.copy_from_slice(&w.to_le_bytes());
        }
        Self {
            inner: rand_chacha::ChaCha8Rng::from_seed(bytes),
        }
    }

    /// Uniform sample in the half-open interval [0, 1).
    pub fn uniform(&mut self) -> f64 {
        (self.inner.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// A pair of independent standard normal samples (Box-Muller).
    pub fn gaussian_pair(&mut self) -> (f64, f64) {
        let u1 = 1.0 - self.uniform(); // (0, 1], keeps ln finite
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let phase = 2.0 * std::f64::consts::PI * u2;
        (r * phase.cos(), r * phase.sin())
    }

    /// One zero-mean circularly symmetric complex Gaussian sample with unit
    /// variance (real and imaginary parts independent, variance 1/2 each).
    pub fn complex_gaussian(&mut self) -> Complex64 {
        let (x, y) = self.gaussian_pair();
        Complex64::new(
            x * std::f64::consts::FRAC_1_SQRT_2,
            y * std::f64::consts::FRAC_1_SQRT_2,
        )
    }

    /// A vector of `n` IID unit-variance complex Gaussian samples.
    pub fn complex_gaussian_vec(&mut self, n: usize) -> Vec<Complex64> {
        (0..n).map(|_| self.complex_gaussian()).collect()
    }
}
