//! Shared numeric kernels: special functions, complex linear algebra and
//! seeded random sampling.

mod linalg;
mod rng;
mod special;

pub use linalg::{
    cholesky, cholesky_jittered, eigen_extremes, hermitian_quadratic_solve, inner,
    leading_eigenvector, norm, norm_sqr, normalize, CMatrix, CholeskyFactor,
};
pub use rng::{RngStream, SampleRng};
pub use special::{binary_entropy, ln_gamma, q_function, rvq_expectation_term};

pub(crate) use special::{h2_unchecked, q_unchecked};
