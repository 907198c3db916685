//! Shared fixtures for the criterion benches.

use fewbit_core::numerics::{normalize, CMatrix, RngStream};
use fewbit_core::Complex64;

/// Deterministic random channel matrix (rows are `h_i^*`).
pub fn channel(nr: usize, nt: usize, seed: u64) -> CMatrix {
    let mut rng = RngStream::new(seed, 0).sampler();
    CMatrix::from_rows(
        &(0..nr)
            .map(|_| rng.complex_gaussian_vec(nt))
            .collect::<Vec<_>>(),
    )
}

/// Deterministic unit-norm beamformer.
pub fn beam(nt: usize, seed: u64) -> Vec<Complex64> {
    normalize(&RngStream::new(seed, 1).sampler().complex_gaussian_vec(nt))
}
