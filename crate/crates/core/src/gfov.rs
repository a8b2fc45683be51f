//! The generalized two-sided field of values
//! `G(A) = { y*Ax : y = (VV*)⁻¹x, y*x = 1 }`.
//!
//! For nondefective `A`, the substitution `z = V⁻¹x` turns the
//! constrained bilinear form into `z*Λz` with `z*z = 1`, so `G(A)` is the
//! set of convex combinations of the eigenvalues — the convex hull of
//! the spectrum. [`gfov`] computes that hull and cross-checks it against
//! the independent Givens-sweep route `F_H(A)` with `H = (VV*)⁻¹` before
//! accepting the result.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fov::{contains, fov_boundary, givens_fov_boundary, hausdorff, hull, Polygon};
use crate::matcore::{hermitian_part, is_normal, ComplexMatrix, Metric};
use crate::spectra::{eig, is_real_spectrum, EigenSystem};
use crate::{dot, sampling, tol, Vector};

use ndarray_linalg::{Eigh, UPLO};

/// Seed of the fixed internal stream used for the acceptance samples
/// drawn by [`gfov`]; fixed so that repeated runs are identical.
const GFOV_CHECK_SEED: u64 = 0xF07;
const GFOV_CHECK_SAMPLES: usize = 100;

/// Result of [`gfov`]: the polygon (convex hull of the spectrum), the
/// spectral data behind it, the metric `H = (VV*)⁻¹`, and the fraction of
/// definitional samples that landed inside the polygon.
#[derive(Debug, Clone)]
pub struct GfovResult {
    pub polygon: Polygon,
    pub eigen: EigenSystem,
    pub metric: Metric,
    pub samples_inside_fraction: f64,
}

/// Generalized two-sided field of values of a nondefective matrix.
///
/// The polygon is the convex hull of the computed eigenvalues (the same
/// hull routine used everywhere else). Before returning, the result is
/// cross-checked against the Givens sweep `F_H(A)` at 256 angles and a
/// batch of definitional samples `y*Ax`.
pub fn gfov(a: &ComplexMatrix) -> Result<GfovResult> {
    let e = eig(a)?;
    let polygon = hull(e.lambda())?;
    let scale = e.spectral_scale();

    let sweep = givens_fov_boundary(a, e.metric(), 256)?;
    let gap = hausdorff(&polygon, &sweep);
    let route_tol = tol::route_tol(scale, e.cond_v());
    if gap > route_tol {
        return Err(Error::Inconsistent {
            context: "spectral hull vs Givens sweep",
            measured: gap,
            tolerance: route_tol,
        });
    }

    let samples = definitional_samples(a, &e, GFOV_CHECK_SAMPLES, GFOV_CHECK_SEED);
    let stol = tol::sample_tol(scale, e.cond_v());
    let inside = samples
        .iter()
        .filter(|&&s| contains(&polygon, s, stol))
        .count();
    let samples_inside_fraction = inside as f64 / samples.len() as f64;

    Ok(GfovResult {
        polygon,
        metric: e.metric().clone(),
        eigen: e,
        samples_inside_fraction,
    })
}

/// Draws `n` definitional samples of `G(A)`: seeded random `x`, rescaled
/// so `x*Hx = 1`, then `y = Hx` and the sample is `y*Ax`. Sample `k`
/// uses stream `k` of the seed, so subsets are reproducible.
pub fn gfov_samples(a: &ComplexMatrix, n: usize, seed: u64) -> Result<Vec<Complex64>> {
    assert!(n >= 1, "need at least one sample");
    let e = eig(a)?;
    Ok(definitional_samples(a, &e, n, seed))
}

/// Sampling core shared by [`gfov`] and [`gfov_samples`], reusing an
/// existing eigensystem.
pub fn definitional_samples(
    a: &ComplexMatrix,
    e: &EigenSystem,
    n: usize,
    seed: u64,
) -> Vec<Complex64> {
    let dim = a.dim();
    (0..n)
        .map(|k| {
            let mut rng = sampling::seeded_rng(seed, k as u64);
            let x = sampling::complex_gaussian_vec(&mut rng, dim);
            definitional_sample_for(a, e, &x)
        })
        .collect()
}

/// One definitional sample `y*Ax` for a given direction `x`.
pub fn definitional_sample_for(a: &ComplexMatrix, e: &EigenSystem, x: &Vector) -> Complex64 {
    let h = e.metric();
    let quad = dot(x, &h.apply(x)).re;
    // x*Hx > 0 for any nonzero x since H is positive definite
    assert!(quad > 0.0, "degenerate sample: x*Hx must be positive");
    let xs = x.mapv(|z| z / quad.sqrt());
    let y = h.apply(&xs);
    dot(&y, &a.matvec(&xs))
}

/// Classification of a matrix under the spectral notion of definiteness
/// (nonnegative / positive real eigenvalues).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Definiteness {
    PositiveDefinite,
    PositiveSemidefinite,
    NotPositive,
    ComplexSpectrum,
}

impl std::fmt::Display for Definiteness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Definiteness::PositiveDefinite => "positive-definite",
            Definiteness::PositiveSemidefinite => "positive-semidefinite",
            Definiteness::NotPositive => "not-positive",
            Definiteness::ComplexSpectrum => "complex-spectrum",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone)]
pub struct DefinitenessReport {
    pub classification: Definiteness,
    pub min_real_eig: f64,
    /// A sample `(x, y, y*Ax)` with nonpositive real part, when one was
    /// encountered.
    pub witness_sample: Option<(Vector, Vector, Complex64)>,
}

/// Classifies `a` as positive (semi)definite in the two-sided sense. The
/// decision is made on eigenvalues; definitional samples only
/// cross-check the positive-definite case (`G(A)` must then sit in the
/// open right half plane).
pub fn definiteness(a: &ComplexMatrix) -> Result<DefinitenessReport> {
    let e = eig(a)?;
    let min_real_eig = e
        .lambda()
        .iter()
        .map(|z| z.re)
        .fold(f64::INFINITY, f64::min);
    if !is_real_spectrum(&e, tol::REAL_SPECTRUM_TOL) {
        return Ok(DefinitenessReport {
            classification: Definiteness::ComplexSpectrum,
            min_real_eig,
            witness_sample: None,
        });
    }
    let scale = e.spectral_scale();
    let classification = if min_real_eig > tol::PD_TOL * scale {
        Definiteness::PositiveDefinite
    } else if min_real_eig > -tol::PD_TOL * scale {
        Definiteness::PositiveSemidefinite
    } else {
        Definiteness::NotPositive
    };

    let mut witness_sample = None;
    if classification == Definiteness::PositiveDefinite {
        // cross-check: samples of G(A) must have positive real part
        for k in 0..GFOV_CHECK_SAMPLES {
            let mut rng = sampling::seeded_rng(GFOV_CHECK_SEED, k as u64);
            let x = sampling::complex_gaussian_vec(&mut rng, a.dim());
            let value = definitional_sample_for(a, &e, &x);
            if value.re <= 0.0 {
                let quad = dot(&x, &e.metric().apply(&x)).re;
                let xs = x.mapv(|z| z / quad.sqrt());
                let y = e.metric().apply(&xs);
                witness_sample = Some((xs, y, value));
                break;
            }
        }
    }

    Ok(DefinitenessReport {
        classification,
        min_real_eig,
        witness_sample,
    })
}

/// Outcome of one polygon-identity check.
#[derive(Debug, Clone)]
pub enum CheckOutcome {
    Passed { gap: f64, tolerance: f64 },
    Failed { gap: f64, tolerance: f64 },
    Skipped { reason: &'static str },
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        !matches!(self, CheckOutcome::Failed { .. })
    }

    fn from_gap(gap: f64, tolerance: f64) -> Self {
        if gap <= tolerance {
            CheckOutcome::Passed { gap, tolerance }
        } else {
            CheckOutcome::Failed { gap, tolerance }
        }
    }
}

#[derive(Debug, Clone)]
pub struct PropertyCheck {
    pub name: &'static str,
    pub outcome: CheckOutcome,
}

/// Report of the transformation-property battery; see
/// [`verify_gfov_properties`].
#[derive(Debug, Clone)]
pub struct GfovPropertyReport {
    pub checks: Vec<PropertyCheck>,
}

impl GfovPropertyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.outcome.passed())
    }
}

/// Verifies the transformation identities of `G` on a concrete matrix,
/// each stated as a polygon identity measured in Hausdorff distance:
///
/// 1. translation: `G(A + αI) = G(A) + α`;
/// 2. scaling: `G(αA) = α G(A)`;
/// 3. normal reduction: `G(A) = F(A)` when `A` is normal (skipped
///    otherwise);
/// 4. Hermitian-part interval: `G(H(A))` equals the segment
///    `[λ_min(H(A)), λ_max(H(A))]`, which equals the real extent of
///    `F(A)`.
pub fn verify_gfov_properties(
    a: &ComplexMatrix,
    alpha: Complex64,
    tol_rel: f64,
) -> Result<GfovPropertyReport> {
    if alpha.norm() == 0.0 {
        return Err(Error::InvalidArgument(
            "alpha must be nonzero for the scaling check".into(),
        ));
    }
    let base = gfov(a)?;
    let mut checks = Vec::with_capacity(4);

    // 1: G(A + αI) = G(A) + α
    {
        let shifted = gfov(&a.shift(alpha))?;
        let expected = base.polygon.translate(alpha);
        let gap = hausdorff(&shifted.polygon, &expected);
        let scale = expected.magnitude().max(shifted.polygon.magnitude()).max(1.0);
        checks.push(PropertyCheck {
            name: "translation",
            outcome: CheckOutcome::from_gap(gap, tol_rel * scale),
        });
    }

    // 2: G(αA) = α G(A)
    {
        let scaled = gfov(&a.scale(alpha))?;
        let expected = base.polygon.scale(alpha);
        let gap = hausdorff(&scaled.polygon, &expected);
        let scale = expected.magnitude().max(scaled.polygon.magnitude()).max(1.0);
        checks.push(PropertyCheck {
            name: "scaling",
            outcome: CheckOutcome::from_gap(gap, tol_rel * scale),
        });
    }

    let boundary = fov_boundary(a, 512)?;

    // 3: normal matrices: G(A) = F(A)
    {
        let outcome = if is_normal(a, tol::HERM_TOL) {
            let gap = hausdorff(&base.polygon, &boundary);
            let scale = boundary.magnitude().max(1.0);
            CheckOutcome::from_gap(gap, tol_rel * scale)
        } else {
            CheckOutcome::Skipped {
                reason: "matrix is not normal",
            }
        };
        checks.push(PropertyCheck {
            name: "normal-reduction",
            outcome,
        });
    }

    // 4: G(H(A)) = [λ_min, λ_max] of H(A) = Re-extent of F(A)
    {
        let hp = hermitian_part(a);
        let ghp = gfov(&hp)?;
        let (w, _) = hp
            .array()
            .eigh(UPLO::Lower)
            .map_err(|e| Error::backend("eigh", e))?;
        let lo = w[0];
        let hi = w[w.len() - 1];
        let segment = hull(&[Complex64::new(lo, 0.0), Complex64::new(hi, 0.0)])?;
        let gap_polygon = hausdorff(&ghp.polygon, &segment);
        let (flo, fhi) = boundary.real_extent();
        let gap_extent = (flo - lo).abs().max((fhi - hi).abs());
        let gap = gap_polygon.max(gap_extent);
        let scale = hi.abs().max(lo.abs()).max(1.0);
        checks.push(PropertyCheck {
            name: "hermitian-part-interval",
            outcome: CheckOutcome::from_gap(gap, tol_rel * scale),
        });
    }

    Ok(GfovPropertyReport { checks })
}
