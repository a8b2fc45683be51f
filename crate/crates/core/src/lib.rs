//! Fields of values of dense complex matrices.
//!
//! This crate computes three flavours of the field of values (numerical
//! range) of a square complex matrix `A`:
//!
//! - the classical field `F(A) = { x*Ax : ||x|| = 1 }`, traced by a
//!   supporting-line angle sweep ([`fov::fov_boundary`]);
//! - the Givens field `F_H(A)`, the field of values in the inner product
//!   induced by a Hermitian positive definite `H`, computed through the
//!   congruence reduction `F_H(A) = F(C A C⁻¹)` with `H = C*C`
//!   ([`fov::givens_fov_boundary`]);
//! - the generalized two-sided field `G(A) = { y*Ax : y = (VV*)⁻¹x, y*x = 1 }`,
//!   where `V` is an eigenvector basis of `A`. For nondefective `A` this set
//!   is exactly the convex hull of the spectrum ([`gfov::gfov`]).
//!
//! On top of these sit the Rayleigh-quotient variants ([`rayleigh`]) and the
//! variational (Rayleigh–Ritz / Courant–Fischer) characterizations of real
//! spectra of non-Hermitian matrices ([`variational`]).
//!
//! All computations are dense, double precision, and aimed at desk scale
//! (n ≲ 50). Heavy decompositions (general and Hermitian eigenproblems,
//! QR, SVD, Cholesky) are delegated to LAPACK.

pub mod error;
pub mod fov;
pub mod gfov;
pub mod matcore;
pub mod rayleigh;
pub mod sampling;
pub mod spectra;
pub mod tol;
pub mod variational;

pub use error::{Error, Result};
pub use matcore::{ComplexMatrix, Metric};
pub use spectra::{EigenPair, EigenSystem};

use ndarray::Array1;
use num_complex::Complex64;

/// Column vector over the complex field; the carrier for all vector
/// arguments in this crate.
pub type Vector = Array1<Complex64>;

/// Euclidean norm of a complex vector.
pub fn vec_norm(x: &Vector) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Standard inner product `y*x` (conjugate-linear in `y`).
pub fn dot(y: &Vector, x: &Vector) -> Complex64 {
    y.iter().zip(x.iter()).map(|(a, b)| a.conj() * b).sum()
}
