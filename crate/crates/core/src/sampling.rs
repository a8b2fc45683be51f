//! Seeded sampling utilities.
//!
//! All randomized operations in this crate draw from ChaCha8 streams:
//! the seed selects the generator, the stream index separates independent
//! draws (one stream per sample / trial), so results are reproducible and
//! order-independent.

use ndarray::{Array1, Array2};
use ndarray_linalg::QR;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::Vector;

pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Standard complex Gaussian vector (independent N(0,1) real and
/// imaginary parts).
pub fn complex_gaussian_vec(rng: &mut ChaCha8Rng, n: usize) -> Vector {
    Array1::from_shape_fn(n, |_| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im)
    })
}

pub fn complex_gaussian_mat(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Array2<Complex64> {
    Array2::from_shape_fn((rows, cols), |_| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im)
    })
}

pub fn real_gaussian_mat(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Array2<f64> {
    Array2::from_shape_fn((rows, cols), |_| rng.sample(StandardNormal))
}

/// Unitary factor of the QR decomposition, with the phase ambiguity fixed
/// so the distribution is Haar when the input is Gaussian.
pub fn unitary_from(g: &Array2<Complex64>) -> Array2<Complex64> {
    let (mut q, r) = g.qr().expect("qr of finite matrix");
    for j in 0..r.nrows().min(r.ncols()) {
        let d = r[(j, j)];
        if d.norm() > 0.0 {
            let phase = d / d.norm();
            for i in 0..q.nrows() {
                q[(i, j)] *= phase;
            }
        }
    }
    q
}

/// Real orthogonal counterpart of [`unitary_from`].
pub fn orthogonal_from(g: &Array2<f64>) -> Array2<f64> {
    let (mut q, r) = g.qr().expect("qr of finite matrix");
    for j in 0..r.nrows().min(r.ncols()) {
        if r[(j, j)] < 0.0 {
            for i in 0..q.nrows() {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    q
}
