//! Centralized numerical tolerances.
//!
//! Every threshold used by the library is defined here. Values are chosen
//! for IEEE 754 double precision at desk scale (n ≲ 50) and leave headroom
//! above unit roundoff (~2.2e-16) for accumulation across O(n³) kernels.

/// Relative deviation below which a matrix counts as Hermitian.
pub const HERM_TOL: f64 = 1e-12;

/// Relative reconstruction error allowed for a triangular factorization
/// (`C*C` against the stored `H`).
pub const FACTOR_TOL: f64 = 1e-12;

/// Default ceiling on the condition number of an eigenvector basis.
/// Beyond this, `H = (VV*)⁻¹` loses about half of the significant digits
/// and set-identity claims become unverifiable in double precision.
pub const COND_LIMIT: f64 = 1e8;

/// Relative eigen-residual `||AV - VΛ||_F / ||A||_F` accepted from the
/// dense eigensolver.
pub const EIG_TOL: f64 = 1e-10;

/// Eigenvalues closer than this (relative to the spectral scale) are
/// treated as one cluster and their eigenvectors re-orthonormalized.
pub const CLUSTER_TOL: f64 = 1e-8;

/// Positive-definiteness margin on the smallest eigenvalue, relative to
/// the spectral scale. Below this the classification degrades to
/// semidefinite; below its negative, to not-positive.
pub const PD_TOL: f64 = 1e-10;

/// Realness test for spectra: max |Im λ| relative to max(1, max |λ|).
pub const REAL_SPECTRUM_TOL: f64 = 1e-10;

/// Collinear vertices within this distance (relative to the coordinate
/// scale) of the neighbouring chord are dropped during hull
/// canonicalization.
pub const HULL_COLLINEAR_TOL: f64 = 1e-12;

/// Gap below which the two extreme eigenvalues of a swept Hermitian part
/// count as tied; both extremal eigenvectors then contribute boundary
/// points, capturing the endpoints of flat facets.
pub const SWEEP_TIE_TOL: f64 = 1e-10;

/// `|y*x|` relative to `||x|| ||y||` below which a two-sided quotient is
/// rejected as degenerate.
pub const PAIR_TOL: f64 = 1e-14;

/// Tolerance for grid-based minimality checks (minimal residue norm,
/// minimal inner product), relative to the magnitude of the quantities
/// compared.
pub const GRID_TOL: f64 = 1e-10;

/// Finite-difference step (relative to the vector norm) for stationarity
/// probes.
pub const FD_STEP: f64 = 1e-5;

/// A finite-difference gradient at or below this multiple of `||A||_F`
/// counts as stationary (second-order residue of a central difference).
pub const STATIONARY_PASS: f64 = 1e-3;

/// A finite-difference gradient at or above this multiple of `||A||_F`
/// counts as decisively non-stationary. The band between the two levels
/// is deliberately unclassified; both are heuristic, calibrated on the
/// seeded fixtures.
pub const STATIONARY_FAIL: f64 = 1e-2;

/// Base relative tolerance for definitional samples against the spectral
/// hull; inflated by conditioning through [`sample_tol`].
pub const SAMPLE_TOL: f64 = 1e-8;

/// Base relative tolerance for agreement between the eigenvalue-hull and
/// Givens-sweep routes to the generalized field; inflated by conditioning
/// through [`route_tol`].
pub const ROUTE_TOL: f64 = 1e-7;

/// Base relative tolerance for the variational (Rayleigh–Ritz and
/// Courant–Fischer) bounds; see [`variational_tol`].
pub const VARIATIONAL_TOL: f64 = 1e-8;

/// Tolerance for definitional samples: eigenvector conditioning inflates
/// the roundoff in `y*Ax`, so the base tolerance scales with `cond(V)`
/// once that exceeds 10³.
pub fn sample_tol(scale: f64, cond_v: f64) -> f64 {
    SAMPLE_TOL * scale * (cond_v / 1e3).max(1.0)
}

/// Tolerance for the hull-vs-sweep route comparison, with the same
/// conditioning inflation as [`sample_tol`].
pub fn route_tol(scale: f64, cond_v: f64) -> f64 {
    ROUTE_TOL * scale * (cond_v / 1e3).max(1.0)
}

/// Tolerance for variational bounds around a reference eigenvalue: the
/// `z = V⁻¹x` change of variables multiplies rounding errors by up to
/// `cond(V)`.
pub fn variational_tol(lambda: f64, cond_v: f64) -> f64 {
    VARIATIONAL_TOL * (1.0 + lambda.abs()) * (1.0 + cond_v / 1e3)
}
