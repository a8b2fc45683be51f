//! Rayleigh–Ritz extrema and Courant–Fischer min-max verification for
//! real-spectrum matrices.
//!
//! Under `z = V⁻¹x` the constrained quotient becomes `z*Λz / z*z`, so the
//! extremum over a subspace `S` is the extreme eigenvalue of `Q*ΛQ` for
//! an orthonormal basis `Q` of `V⁻¹S`. The outer min/max over all
//! subspaces is not computable; verification is one-sided sampling of
//! random subspaces plus exact attainment on the eigenvector spans,
//! which together confirm both the bound and its sharpness.

use ndarray::Array2;
use ndarray_linalg::{Eigh, QR, UPLO};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matcore::ComplexMatrix;
use crate::spectra::EigenSystem;
use crate::{dot, sampling, tol, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extremum {
    Min,
    Max,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinMaxDirection {
    /// Inner maximum over `j`-dimensional subspaces; `λ_j` is the outer
    /// minimum.
    MinMax,
    /// Inner minimum over `(n-j+1)`-dimensional subspaces; `λ_j` is the
    /// outer maximum.
    MaxMin,
}

impl std::fmt::Display for MinMaxDirection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MinMaxDirection::MinMax => f.write_str("min-max"),
            MinMaxDirection::MaxMin => f.write_str("max-min"),
        }
    }
}

/// One direction of a Courant–Fischer verification run.
#[derive(Debug, Clone)]
pub struct MinMaxReport {
    pub j: usize,
    pub lambda_j: f64,
    /// Inner extremum per sampled subspace.
    pub inner_values: Vec<f64>,
    /// Inner extremum on the span of the relevant eigenvectors.
    pub achieved_at_eigenspan: f64,
    pub direction: MinMaxDirection,
}

impl MinMaxReport {
    /// One-sided bound on every sample plus attainment at the
    /// eigenvector span.
    pub fn passes(&self, tol: f64) -> bool {
        let bound_ok = match self.direction {
            MinMaxDirection::MinMax => self
                .inner_values
                .iter()
                .all(|&v| v >= self.lambda_j - tol),
            MinMaxDirection::MaxMin => self
                .inner_values
                .iter()
                .all(|&v| v <= self.lambda_j + tol),
        };
        bound_ok && (self.achieved_at_eigenspan - self.lambda_j).abs() <= tol
    }

    /// Worst signed excursion of the samples past `λ_j`, and the
    /// attainment gap.
    pub fn gaps(&self) -> (f64, f64) {
        let worst = match self.direction {
            MinMaxDirection::MinMax => self
                .inner_values
                .iter()
                .map(|v| self.lambda_j - v)
                .fold(f64::NEG_INFINITY, f64::max),
            MinMaxDirection::MaxMin => self
                .inner_values
                .iter()
                .map(|v| v - self.lambda_j)
                .fold(f64::NEG_INFINITY, f64::max),
        };
        (worst, (self.achieved_at_eigenspan - self.lambda_j).abs())
    }
}

/// Both directions of Courant–Fischer at one index `j`.
#[derive(Debug, Clone)]
pub struct CourantFischerReport {
    pub min_max: MinMaxReport,
    pub max_min: MinMaxReport,
}

impl CourantFischerReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.min_max.passes(tol) && self.max_min.passes(tol)
    }
}

/// Exact extremum of the constrained quotient over `span(basis)` (in
/// original coordinates, under `y = (VV*)⁻¹x`): the extreme eigenvalue
/// of `Q*ΛQ` for an orthonormal basis `Q` of the `z`-image of the
/// subspace.
pub fn subspace_extremum(
    e: &EigenSystem,
    basis: &[Vector],
    which: Extremum,
) -> Result<f64> {
    let (lo, hi) = subspace_extrema(e, basis)?;
    Ok(match which {
        Extremum::Min => lo,
        Extremum::Max => hi,
    })
}

/// Both extrema of the constrained quotient over `span(basis)`.
pub fn subspace_extrema(e: &EigenSystem, basis: &[Vector]) -> Result<(f64, f64)> {
    let n = e.dim();
    let k = basis.len();
    if k == 0 {
        return Err(Error::EmptyInput);
    }
    if k > n {
        return Err(Error::RankDeficientBasis);
    }
    if basis.iter().any(|b| b.len() != n) {
        return Err(Error::DimensionMismatch(
            "basis vectors must match the matrix dimension".into(),
        ));
    }
    let lambda = e.real_eigenvalues()?;

    // z-coordinates of the basis
    let mut z: Array2<Complex64> = Array2::zeros((n, k));
    for (j, b) in basis.iter().enumerate() {
        let zb = e.v_inv().matvec(b);
        for i in 0..n {
            z[(i, j)] = zb[i];
        }
    }
    let (q, r) = z.qr().map_err(|er| Error::backend("qr", er))?;
    let diag_max = (0..k).map(|i| r[(i, i)].norm()).fold(0.0, f64::max);
    let diag_min = (0..k)
        .map(|i| r[(i, i)].norm())
        .fold(f64::INFINITY, f64::min);
    if diag_max == 0.0 || diag_min <= 1e-10 * diag_max {
        return Err(Error::RankDeficientBasis);
    }

    // compressed quotient matrix Q*ΛQ, Hermitian by construction
    let mut scaled = q.clone();
    for i in 0..n {
        for j in 0..k {
            scaled[(i, j)] *= lambda[i];
        }
    }
    let qh = Array2::from_shape_fn((k, n), |(i, j)| q[(j, i)].conj());
    let small = crate::matcore::hermitian_part(&ComplexMatrix::unchecked(qh.dot(&scaled)));
    let (w, _) = small
        .array()
        .eigh(UPLO::Lower)
        .map_err(|er| Error::backend("eigh", er))?;
    Ok((w[0], w[k - 1]))
}

/// Extremes of the constrained quotient over the whole space, verified
/// route: `(λ_1, λ_n)` via [`subspace_extrema`] on the standard basis,
/// followed by a sandwich check `λ_1 y*x <= Re(y*Ax) <= λ_n y*x` on
/// seeded samples with `y = Hx`.
pub fn rayleigh_ritz_extrema(
    a: &ComplexMatrix,
    e: &EigenSystem,
    n_samples: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    let n = e.dim();
    if a.dim() != n {
        return Err(Error::DimensionMismatch(
            "matrix and eigensystem dimensions differ".into(),
        ));
    }
    let lambda = e.real_eigenvalues()?;
    let basis: Vec<Vector> = (0..n)
        .map(|i| {
            let mut v: Vector = ndarray::Array1::zeros(n);
            v[i] = Complex64::new(1.0, 0.0);
            v
        })
        .collect();
    let (lo, hi) = subspace_extrema(e, &basis)?;

    let lam_scale = lambda.iter().fold(0.0f64, |acc, l| acc.max(l.abs()));
    let tolv = tol::variational_tol(lam_scale, e.cond_v());
    for s in 0..n_samples {
        let mut rng = sampling::seeded_rng(seed, s as u64);
        let x = sampling::complex_gaussian_vec(&mut rng, n);
        let y = e.metric().apply(&x);
        let pairing = dot(&y, &x).re; // x*Hx > 0
        let value = dot(&y, &a.matvec(&x));
        let lo_bound = lo * pairing - tolv * pairing;
        let hi_bound = hi * pairing + tolv * pairing;
        if value.re < lo_bound || value.re > hi_bound || value.im.abs() > tolv * pairing {
            return Err(Error::SandwichViolation {
                index: s,
                value,
                lo: lo_bound,
                hi: hi_bound,
            });
        }
    }
    Ok((lo, hi))
}

/// Samples the Courant–Fischer characterization of `λ_j`: random
/// subspaces bound it from one side in each direction, and the spans of
/// the first `j` (respectively last `n-j+1`) right eigenvectors attain
/// it. Trial `t` draws from stream `t` (min-max) or `trials + t`
/// (max-min) of the seed.
pub fn courant_fischer_verify(
    a: &ComplexMatrix,
    e: &EigenSystem,
    j: usize,
    trials: usize,
    seed: u64,
) -> Result<CourantFischerReport> {
    let n = e.dim();
    if a.dim() != n {
        return Err(Error::DimensionMismatch(
            "matrix and eigensystem dimensions differ".into(),
        ));
    }
    if j < 1 || j > n {
        return Err(Error::InvalidArgument(format!(
            "j must be in 1..={n}, got {j}"
        )));
    }
    let lambda = e.real_eigenvalues()?;
    let lambda_j = lambda[j - 1];

    let random_basis = |dim: usize, stream: u64| -> Vec<Vector> {
        let mut rng = sampling::seeded_rng(seed, stream);
        (0..dim)
            .map(|_| sampling::complex_gaussian_vec(&mut rng, n))
            .collect()
    };

    // min-max: every j-dimensional subspace has max >= λ_j
    let mut inner_max = Vec::with_capacity(trials);
    for t in 0..trials {
        let basis = random_basis(j, t as u64);
        inner_max.push(subspace_extremum(e, &basis, Extremum::Max)?);
    }
    let eigenspan: Vec<Vector> = (0..j).map(|i| e.right_vector(i)).collect();
    let achieved_min_max = subspace_extremum(e, &eigenspan, Extremum::Max)?;
    let min_max = MinMaxReport {
        j,
        lambda_j,
        inner_values: inner_max,
        achieved_at_eigenspan: achieved_min_max,
        direction: MinMaxDirection::MinMax,
    };

    // max-min: every (n-j+1)-dimensional subspace has min <= λ_j
    let dim2 = n - j + 1;
    let mut inner_min = Vec::with_capacity(trials);
    for t in 0..trials {
        let basis = random_basis(dim2, (trials + t) as u64);
        inner_min.push(subspace_extremum(e, &basis, Extremum::Min)?);
    }
    let eigenspan2: Vec<Vector> = ((j - 1)..n).map(|i| e.right_vector(i)).collect();
    let achieved_max_min = subspace_extremum(e, &eigenspan2, Extremum::Min)?;
    let max_min = MinMaxReport {
        j,
        lambda_j,
        inner_values: inner_min,
        achieved_at_eigenspan: achieved_max_min,
        direction: MinMaxDirection::MaxMin,
    };

    Ok(CourantFischerReport { min_max, max_min })
}
