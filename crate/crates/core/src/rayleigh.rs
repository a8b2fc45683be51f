//! Rayleigh quotient variants: the classical quotient, the naive
//! two-sided quotient `y*Ax / y*x`, and the constrained two-sided
//! quotient in which `y` is tied to `x` through the eigenbasis metric
//! `y = (VV*)⁻¹ x`.
//!
//! The naive quotient is unbounded (its denominator can vanish while the
//! numerator does not); the constrained quotient trades that failure for
//! values confined to the convex hull of the spectrum. The grid checks
//! here probe its minimal-residue, minimal-inner-product, and
//! stationarity characterizations pointwise.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matcore::{h_norm, ComplexMatrix};
use crate::spectra::EigenSystem;
use crate::{dot, tol, vec_norm, Vector};

use ndarray_linalg::{Eigh, UPLO};

/// Evaluation record of the constrained two-sided quotient at one point.
#[derive(Debug, Clone)]
pub struct RqReport {
    /// Quotient value `y*Ax / y*Mx`.
    pub value: Complex64,
    /// The (rescaled) right vector actually used.
    pub x: Vector,
    /// The paired left vector `y = Hx`.
    pub y: Vector,
    /// Right residual `Ax - ρx`.
    pub residual_right: Vector,
    /// Left residual `A*y - conj(ρ)y`.
    pub residual_left: Vector,
    /// `||Ax - ρx||_H`.
    pub h_residual_norm: f64,
    /// `||y - Hx|| / ||y||`; zero up to roundoff by construction.
    pub constraint_gap: f64,
}

/// Classical Rayleigh quotient `x*Ax / x*x`.
pub fn rq(x: &Vector, a: &ComplexMatrix) -> Result<Complex64> {
    check_dim(x, a)?;
    let nx2 = vec_norm(x).powi(2);
    if nx2 == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(dot(x, &a.matvec(x)) / nx2)
}

/// Naive two-sided quotient `y*Ax / y*x`. Fails with
/// [`Error::DegeneratePair`] when `|y*x|` is negligible against
/// `||x|| ||y||` — exactly the unboundedness hazard of this form.
pub fn rq_naive(y: &Vector, x: &Vector, a: &ComplexMatrix) -> Result<Complex64> {
    check_dim(x, a)?;
    check_dim(y, a)?;
    let pairing = dot(y, x);
    let threshold = tol::PAIR_TOL * vec_norm(x) * vec_norm(y);
    if pairing.norm() <= threshold {
        return Err(Error::DegeneratePair { threshold });
    }
    Ok(dot(y, &a.matvec(x)) / pairing)
}

/// Constrained two-sided quotient: `y = Hx` with `H = (VV*)⁻¹` from the
/// eigensystem, `x` rescaled so `y*Mx = 1`, value `y*Ax / y*Mx`.
///
/// `M` defaults to the identity. When supplied it must be Hermitian
/// positive definite in the H-inner product, validated as: `HM`
/// Hermitian to `1e-10` relative with positive spectrum.
pub fn rq_gen(
    x: &Vector,
    a: &ComplexMatrix,
    e: &EigenSystem,
    m: Option<&ComplexMatrix>,
) -> Result<RqReport> {
    check_dim(x, a)?;
    if vec_norm(x) == 0.0 {
        return Err(Error::ZeroVector);
    }
    if a.dim() != e.dim() {
        return Err(Error::DimensionMismatch(
            "matrix and eigensystem dimensions differ".into(),
        ));
    }
    let h = e.metric();

    if let Some(mm) = m {
        check_dim_mat(mm, a)?;
        validate_m(mm, e)?;
    }

    // rescale so that y*Mx = x*HMx = 1 (real positive by validation)
    let mx = match m {
        Some(mm) => mm.matvec(x),
        None => x.clone(),
    };
    let quad = dot(x, &h.apply(&mx)).re;
    if quad <= 0.0 {
        return Err(Error::InvalidM(
            "x*HMx must be positive for the rescaling".into(),
        ));
    }
    let xs = x.mapv(|z| z / quad.sqrt());
    let y = h.apply(&xs);
    let msx = match m {
        Some(mm) => mm.matvec(&xs),
        None => xs.clone(),
    };
    let denom = dot(&y, &msx);
    let value = dot(&y, &a.matvec(&xs)) / denom;

    let residual_right = &a.matvec(&xs) - &xs.mapv(|z| z * value);
    let residual_left = &a.adjoint_matvec(&y) - &y.mapv(|z| z * value.conj());
    let h_residual_norm = h_norm(&residual_right, h)?;
    let constraint_gap = vec_norm(&(&y - &h.apply(&xs))) / vec_norm(&y);

    Ok(RqReport {
        value,
        x: xs,
        y,
        residual_right,
        residual_left,
        h_residual_norm,
        constraint_gap,
    })
}

fn validate_m(m: &ComplexMatrix, e: &EigenSystem) -> Result<()> {
    let hm = e.metric().h().matmul(m);
    let dev = hm.hermitian_deviation();
    if dev > 1e-10 {
        return Err(Error::InvalidM(format!(
            "HM is not Hermitian: relative deviation {dev:.3e}"
        )));
    }
    let sym = crate::matcore::hermitian_part(&hm);
    let (w, _) = sym
        .array()
        .eigh(UPLO::Lower)
        .map_err(|er| Error::backend("eigh", er))?;
    if w[0] <= 0.0 {
        return Err(Error::InvalidM(format!(
            "HM is not positive definite: min eigenvalue {:.3e}",
            w[0]
        )));
    }
    Ok(())
}

/// Residual pair `(Ax - μx, A*y - conj(μ)y)` of a candidate triplet
/// `(μ, x, y)`.
pub fn residuals(
    y: &Vector,
    x: &Vector,
    mu: Complex64,
    a: &ComplexMatrix,
) -> Result<(Vector, Vector)> {
    check_dim(x, a)?;
    check_dim(y, a)?;
    let rx = &a.matvec(x) - &x.mapv(|z| z * mu);
    let ry = &a.adjoint_matvec(y) - &y.mapv(|z| z * mu.conj());
    Ok((rx, ry))
}

/// Uniform grid over a disk: `count` points on concentric rings around
/// `center` (the center itself included), radius `radius`.
pub fn disk_grid(center: Complex64, radius: f64, count: usize) -> Vec<Complex64> {
    assert!(count >= 1);
    let mut grid = Vec::with_capacity(count);
    grid.push(center);
    if count == 1 {
        return grid;
    }
    let rings = 8.min(count - 1);
    let per_ring = (count - 1) / rings;
    let extra = (count - 1) % rings;
    for ring in 0..rings {
        let r = radius * (ring + 1) as f64 / rings as f64;
        let points = per_ring + usize::from(ring < extra);
        for k in 0..points {
            let theta = std::f64::consts::TAU * k as f64 / points as f64;
            grid.push(center + Complex64::from_polar(r, theta));
        }
    }
    grid
}

/// Uniform real grid of `count` points on `[center - radius, center + radius]`,
/// always including `center`.
pub fn line_grid(center: f64, radius: f64, count: usize) -> Vec<f64> {
    assert!(count >= 1);
    let mut grid: Vec<f64> = (0..count)
        .map(|k| center - radius + 2.0 * radius * k as f64 / (count.max(2) - 1) as f64)
        .collect();
    grid.push(center);
    grid
}

/// Checks the minimal-residue-norm characterization of the constrained
/// quotient on a grid of trial shifts.
///
/// Right form: `||Au - μu||²_H >= ||Au||²_H - |ρ|²||u||²_H` for all `μ`,
/// with equality only at the H-Rayleigh value `ρ = (u*HAu)/(u*Hu)`; the
/// mirrored left form runs on `u*A - μu*` around its own stationary
/// value `(u*AHu)/(u*Hu)`. "Equality only at ρ" is tested as: the grid
/// minimizer is the grid point nearest ρ, and the gap at ρ is within
/// tolerance.
pub fn min_residual_check(
    u: &Vector,
    a: &ComplexMatrix,
    e: &EigenSystem,
    mu_grid: &[Complex64],
) -> Result<bool> {
    check_dim(u, a)?;
    if vec_norm(u) == 0.0 {
        return Err(Error::ZeroVector);
    }
    if mu_grid.is_empty() {
        return Err(Error::EmptyInput);
    }
    let metric = e.metric();
    let cu = metric.apply_factor(u);
    let t = vec_norm(&cu).powi(2);

    // right form
    let w = a.matvec(u);
    let cw = metric.apply_factor(&w);
    let rho_r = dot(u, &metric.apply(&w)) / t; // u*HAu / u*Hu
    let right = grid_minimality(&cw, &cu, rho_r, mu_grid, t, false);

    // mirrored left form, around its own stationary value
    let wl = a.adjoint_matvec(u);
    let cwl = metric.apply_factor(&wl);
    let rho_l = dot(&wl, &metric.apply(u)) / t; // u*AHu / u*Hu
    let left_grid: Vec<Complex64> = mu_grid.iter().map(|&mu| mu - rho_r + rho_l).collect();
    let left = grid_minimality(&cwl, &cu, rho_l, &left_grid, t, true);

    Ok(right && left)
}

/// Shared core: checks `||cw - φ(μ)·cu||² >= ||cw||² - |ρ|²·t` on the
/// grid with the equality conditions at `ρ`. `conjugate` selects
/// `φ(μ) = conj(μ)` (left form) instead of `φ(μ) = μ`.
fn grid_minimality(
    cw: &Vector,
    cu: &Vector,
    rho: Complex64,
    grid: &[Complex64],
    t: f64,
    conjugate: bool,
) -> bool {
    let f = |mu: Complex64| -> f64 {
        let phi = if conjugate { mu.conj() } else { mu };
        cw.iter()
            .zip(cu.iter())
            .map(|(w, u)| (w - phi * u).norm_sqr())
            .sum()
    };
    let norm_w2: f64 = cw.iter().map(|z| z.norm_sqr()).sum();
    let rhs = norm_w2 - rho.norm_sqr() * t;
    let scale = norm_w2 + (1.0 + rho.norm_sqr()) * t;
    let tolerance = tol::GRID_TOL * scale;

    let bound_holds = grid.iter().all(|&mu| f(mu) >= rhs - tolerance);

    let argmin = grid
        .iter()
        .enumerate()
        .min_by(|(_, &x), (_, &y)| f(x).total_cmp(&f(y)))
        .map(|(i, _)| i)
        .unwrap();
    let nearest = grid
        .iter()
        .enumerate()
        .min_by(|(_, &x), (_, &y)| (x - rho).norm().total_cmp(&(y - rho).norm()))
        .map(|(i, _)| i)
        .unwrap();

    let gap_at_rho = (f(rho) - rhs).abs();

    bound_holds && argmin == nearest && gap_at_rho <= tolerance
}

/// Checks the minimal-inner-product characterization of the naive
/// two-sided quotient for real data: with `ρ = yᵀAx / yᵀx`,
///
/// `(Aᵀy - μy)ᵀ(Ax - μx) >= yᵀA²x - ρ²·yᵀx`
///
/// for every real `μ`, with equality only at `μ = ρ`. The bound is the
/// identity `lhs = yᵀx·(μ-ρ)² + rhs`, so it requires `yᵀx > 0`; since
/// the quotient is invariant under `y ↦ -y`, a negative pairing is
/// flipped before testing.
pub fn min_inner_product_check(
    y: &Vector,
    x: &Vector,
    a: &ComplexMatrix,
    mu_grid: &[f64],
) -> Result<bool> {
    check_dim(x, a)?;
    check_dim(y, a)?;
    if mu_grid.is_empty() {
        return Err(Error::EmptyInput);
    }
    let amax = a.max_abs().max(1.0);
    if a.max_imag_abs() > 1e-12 * amax {
        return Err(Error::NotRealInput("matrix has imaginary entries".into()));
    }
    let vec_real = |v: &Vector, name: &str| -> Result<Vec<f64>> {
        let scale = vec_norm(v).max(1.0);
        if v.iter().any(|z| z.im.abs() > 1e-12 * scale) {
            return Err(Error::NotRealInput(format!("{name} has imaginary entries")));
        }
        Ok(v.iter().map(|z| z.re).collect())
    };
    let mut yr = vec_real(y, "y")?;
    let xr = vec_real(x, "x")?;

    let rdot = |a: &[f64], b: &[f64]| -> f64 { a.iter().zip(b).map(|(p, q)| p * q).sum() };
    let mut d = rdot(&yr, &xr);
    let threshold = tol::PAIR_TOL * vec_norm(x) * vec_norm(y);
    if d.abs() <= threshold {
        return Err(Error::DegeneratePair { threshold });
    }
    if d < 0.0 {
        for v in &mut yr {
            *v = -*v;
        }
        d = -d;
    }

    let n = a.dim();
    let re = |i: usize, j: usize| a[(i, j)].re;
    let mut q = vec![0.0; n]; // A x
    let mut p = vec![0.0; n]; // Aᵀ y
    for i in 0..n {
        for j in 0..n {
            q[i] += re(i, j) * xr[j];
            p[j] += re(i, j) * yr[i];
        }
    }
    let rho = rdot(&yr, &q) / d;
    let pq = rdot(&p, &q); // yᵀA²x
    let rhs = pq - rho * rho * d;
    let scale = pq.abs() + (1.0 + rho * rho) * d;
    let tolerance = tol::GRID_TOL * scale.max(1.0);

    let lhs = |mu: f64| -> f64 {
        (0..n)
            .map(|i| (p[i] - mu * yr[i]) * (q[i] - mu * xr[i]))
            .sum()
    };

    let bound_holds = mu_grid.iter().all(|&mu| lhs(mu) >= rhs - tolerance);
    let argmin = mu_grid
        .iter()
        .enumerate()
        .min_by(|(_, &x1), (_, &y1)| lhs(x1).total_cmp(&lhs(y1)))
        .map(|(i, _)| i)
        .unwrap();
    let nearest = mu_grid
        .iter()
        .enumerate()
        .min_by(|(_, &x1), (_, &y1)| (x1 - rho).abs().total_cmp(&(y1 - rho).abs()))
        .map(|(i, _)| i)
        .unwrap();
    let gap_at_rho = (lhs(rho) - rhs).abs();

    Ok(bound_holds && argmin == nearest && gap_at_rho <= tolerance)
}

/// Maximum central finite-difference slope of the naive two-sided
/// quotient over all `4n` real coordinate directions (real and imaginary
/// parts of `x` and `y`), with per-direction step `h·||x||` (resp.
/// `h·||y||`).
///
/// At an exact eigenpair the quotient is flat to first order and the
/// estimate is `O(h)`; at a generic pair it is order `||A||`.
pub fn stationarity_gradient(
    y: &Vector,
    x: &Vector,
    a: &ComplexMatrix,
    h: f64,
) -> Result<f64> {
    check_dim(x, a)?;
    check_dim(y, a)?;
    assert!(h > 0.0, "finite-difference step must be positive");
    let pairing = dot(y, x);
    let threshold = tol::PAIR_TOL * vec_norm(x) * vec_norm(y);
    if pairing.norm() <= threshold {
        return Err(Error::DegeneratePair { threshold });
    }

    let quotient = |yv: &Vector, xv: &Vector| -> Complex64 {
        dot(yv, &a.matvec(xv)) / dot(yv, xv)
    };

    let n = a.dim();
    let sx = vec_norm(x);
    let sy = vec_norm(y);
    let mut max_slope: f64 = 0.0;
    for j in 0..n {
        for im_part in [false, true] {
            let dx = if im_part {
                Complex64::new(0.0, h * sx)
            } else {
                Complex64::new(h * sx, 0.0)
            };
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[j] += dx;
            xm[j] -= dx;
            let slope = (quotient(y, &xp) - quotient(y, &xm)).norm() / (2.0 * h);
            max_slope = max_slope.max(slope);

            let dy = if im_part {
                Complex64::new(0.0, h * sy)
            } else {
                Complex64::new(h * sy, 0.0)
            };
            let mut yp = y.clone();
            let mut ym = y.clone();
            yp[j] += dy;
            ym[j] -= dy;
            let slope = (quotient(&yp, x) - quotient(&ym, x)).norm() / (2.0 * h);
            max_slope = max_slope.max(slope);
        }
    }
    Ok(max_slope)
}

fn check_dim(x: &Vector, a: &ComplexMatrix) -> Result<()> {
    if x.len() != a.dim() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} against matrix of dimension {}",
            x.len(),
            a.dim()
        )));
    }
    Ok(())
}

fn check_dim_mat(m: &ComplexMatrix, a: &ComplexMatrix) -> Result<()> {
    if m.dim() != a.dim() {
        return Err(Error::DimensionMismatch(format!(
            "M of dimension {} against matrix of dimension {}",
            m.dim(),
            a.dim()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling;
    use crate::spectra::{eig, gen_prescribed, gen_prescribed_real};
    use ndarray::Array1;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn e1(n: usize) -> Vector {
        let mut v: Vector = Array1::zeros(n);
        v[0] = c(1.0, 0.0);
        v
    }

    #[test]
    fn rq_basis_vector_picks_diagonal() {
        let a = ComplexMatrix::diagonal(&[c(5.0, 0.0), c(1.0, 0.0)]);
        assert!((rq(&e1(2), &a).unwrap() - c(5.0, 0.0)).norm() <= 1e-15);
    }

    #[test]
    fn rq_scale_invariant() {
        let mut rng = sampling::seeded_rng(41, 0);
        let a = ComplexMatrix::unchecked(sampling::complex_gaussian_mat(&mut rng, 4, 4));
        let x = sampling::complex_gaussian_vec(&mut rng, 4);
        let alpha = c(3.0, -2.0);
        let r1 = rq(&x, &a).unwrap();
        let r2 = rq(&x.mapv(|z| z * alpha), &a).unwrap();
        assert!((r1 - r2).norm() <= 1e-13 * (1.0 + r1.norm()));
    }

    #[test]
    fn rq_matches_direct_formula() {
        let mut rng = sampling::seeded_rng(42, 0);
        let a = ComplexMatrix::unchecked(sampling::complex_gaussian_mat(&mut rng, 5, 5));
        let x = sampling::complex_gaussian_vec(&mut rng, 5);
        let direct = dot(&x, &a.matvec(&x)) / dot(&x, &x);
        assert!((rq(&x, &a).unwrap() - direct).norm() <= 1e-14 * (1.0 + direct.norm()));
    }

    #[test]
    fn rq_zero_vector_errors() {
        let a = ComplexMatrix::identity(3);
        let z: Vector = Array1::zeros(3);
        assert!(matches!(rq(&z, &a), Err(Error::ZeroVector)));
    }

    #[test]
    fn rq_naive_reduces_to_rq_when_pair_coincides() {
        let mut rng = sampling::seeded_rng(43, 0);
        let a = ComplexMatrix::unchecked(sampling::complex_gaussian_mat(&mut rng, 4, 4));
        let x = sampling::complex_gaussian_vec(&mut rng, 4);
        let naive = rq_naive(&x, &x, &a).unwrap();
        let classic = rq(&x, &a).unwrap();
        assert!((naive - classic).norm() <= 1e-13 * (1.0 + classic.norm()));
    }

    #[test]
    fn rq_naive_unbounded_along_degenerate_pairs() {
        // y*Ax = 1 while y*x = ε, so the value blows up like 1/ε
        let a = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        let x: Vector = Array1::from_vec(vec![c(0.0, 0.0), c(1.0, 0.0)]);
        let eps = 1e-6;
        let y: Vector = Array1::from_vec(vec![c(1.0, 0.0), c(eps, 0.0)]);
        let value = rq_naive(&y, &x, &a).unwrap();
        assert!(value.norm() >= 1e6 * 0.99, "|value| = {}", value.norm());
    }

    #[test]
    fn rq_naive_rejects_orthogonal_pair() {
        let a = ComplexMatrix::identity(2);
        let x: Vector = Array1::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)]);
        let y: Vector = Array1::from_vec(vec![c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(
            rq_naive(&y, &x, &a),
            Err(Error::DegeneratePair { .. })
        ));
    }

    #[test]
    fn rq_naive_at_eigenpair_gives_eigenvalue() {
        let a = gen_prescribed(&[c(1.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)], 50.0, 3);
        let e = eig(&a).unwrap();
        for i in 0..3 {
            let pair = e.eigen_pair(i);
            let value = rq_naive(&pair.left, &pair.right, &a).unwrap();
            assert!((value - pair.value).norm() <= 1e-10 * e.cond_v().max(1.0));
        }
    }

    #[test]
    fn rq_gen_at_eigenvector_gives_eigenvalue() {
        let a = gen_prescribed(&[c(1.0, 0.0), c(2.0, 1.0), c(-1.0, -0.5)], 100.0, 7);
        let e = eig(&a).unwrap();
        for i in 0..3 {
            let report = rq_gen(&e.right_vector(i), &a, &e, None).unwrap();
            assert!(
                (report.value - e.lambda()[i]).norm() <= 1e-10 * e.cond_v(),
                "i={i}: {} vs {}",
                report.value,
                e.lambda()[i]
            );
            assert!(report.constraint_gap <= 1e-10);
        }
    }

    #[test]
    fn rq_gen_hermitian_matches_classical() {
        let a = crate::spectra::gen_normal(&[c(-1.0, 0.0), c(2.0, 0.0), c(5.0, 0.0)], 6);
        let e = eig(&a).unwrap();
        let mut rng = sampling::seeded_rng(44, 0);
        let x = sampling::complex_gaussian_vec(&mut rng, 3);
        let report = rq_gen(&x, &a, &e, None).unwrap();
        let classic = rq(&x, &a).unwrap();
        assert!((report.value - classic).norm() <= 1e-13 * (1.0 + classic.norm()));
    }

    #[test]
    fn rq_gen_change_of_variables_route() {
        // value equals rq(V⁻¹x, Λ)
        let a = gen_prescribed(&[c(1.0, 0.0), c(3.0, 0.5), c(-2.0, 1.0)], 80.0, 8);
        let e = eig(&a).unwrap();
        let lam = ComplexMatrix::diagonal(e.lambda());
        let mut rng = sampling::seeded_rng(45, 0);
        for _ in 0..10 {
            let x = sampling::complex_gaussian_vec(&mut rng, 3);
            let report = rq_gen(&x, &a, &e, None).unwrap();
            let z = e.v_inv().matvec(&x);
            let via_z = rq(&z, &lam).unwrap();
            assert!(
                (report.value - via_z).norm() <= 1e-11 * (1.0 + via_z.norm()) * e.cond_v(),
                "{} vs {}",
                report.value,
                via_z
            );
        }
    }

    #[test]
    fn rq_gen_value_recomputable_from_stored_vectors() {
        let a = gen_prescribed(&[c(2.0, 0.0), c(5.0, 0.0)], 60.0, 10);
        let e = eig(&a).unwrap();
        let mut rng = sampling::seeded_rng(46, 0);
        let x = sampling::complex_gaussian_vec(&mut rng, 2);
        let report = rq_gen(&x, &a, &e, None).unwrap();
        let recomputed = dot(&report.y, &a.matvec(&report.x)) / dot(&report.y, &report.x);
        assert!((report.value - recomputed).norm() <= 1e-13 * (1.0 + report.value.norm()));
    }

    #[test]
    fn rq_gen_with_valid_and_invalid_m() {
        let a = gen_prescribed(&[c(1.0, 0.0), c(2.0, 0.0)], 20.0, 11);
        let e = eig(&a).unwrap();
        let x = e.right_vector(0);

        // M = I is always valid and matches the default
        let id = ComplexMatrix::identity(2);
        let with_m = rq_gen(&x, &a, &e, Some(&id)).unwrap();
        let without = rq_gen(&x, &a, &e, None).unwrap();
        assert!((with_m.value - without.value).norm() <= 1e-12);

        // an M that is not Hermitian in the H-inner product is rejected
        let bad = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!(matches!(
            rq_gen(&x, &a, &e, Some(&bad)),
            Err(Error::InvalidM(_))
        ));
    }

    #[test]
    fn residuals_examples() {
        let a = gen_prescribed(&[c(1.0, 0.0), c(4.0, 0.0)], 30.0, 12);
        let e = eig(&a).unwrap();
        let pair = e.eigen_pair(1);
        let (rx, ry) = residuals(&pair.left, &pair.right, pair.value, &a).unwrap();
        let bound = 1e-10 * a.frobenius_norm() * vec_norm(&pair.left).max(1.0);
        assert!(vec_norm(&rx) <= bound);
        assert!(vec_norm(&ry) <= bound);

        // μ = 0 returns (Ax, A*y)
        let mut rng = sampling::seeded_rng(47, 0);
        let x = sampling::complex_gaussian_vec(&mut rng, 2);
        let y = sampling::complex_gaussian_vec(&mut rng, 2);
        let (rx, ry) = residuals(&y, &x, c(0.0, 0.0), &a).unwrap();
        assert!(vec_norm(&(&rx - &a.matvec(&x))) <= 1e-15 * a.frobenius_norm());
        assert!(vec_norm(&(&ry - &a.adjoint_matvec(&y))) <= 1e-15 * a.frobenius_norm());

        // elementwise oracle
        let mu = c(0.5, -1.0);
        let (rx, ry) = residuals(&y, &x, mu, &a).unwrap();
        for i in 0..2 {
            let ex: Complex64 = (0..2).map(|j| a[(i, j)] * x[j]).sum::<Complex64>() - mu * x[i];
            assert!((rx[i] - ex).norm() <= 1e-15 * (1.0 + ex.norm()));
            let ey: Complex64 =
                (0..2).map(|j| a[(j, i)].conj() * y[j]).sum::<Complex64>() - mu.conj() * y[i];
            assert!((ry[i] - ey).norm() <= 1e-15 * (1.0 + ey.norm()));
        }
    }

    #[test]
    fn min_residual_at_eigenvector() {
        let a = gen_prescribed(&[c(1.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)], 40.0, 13);
        let e = eig(&a).unwrap();
        let u = e.right_vector(2);
        let lam = e.lambda()[2];
        let grid = disk_grid(lam, 2.0 * lam.norm(), 201);
        assert!(min_residual_check(&u, &a, &e, &grid).unwrap());
    }

    #[test]
    fn min_residual_on_seeded_vectors() {
        let a = gen_prescribed(&[c(-1.0, 0.0), c(1.0, 0.0), c(3.0, 0.0)], 100.0, 14);
        let e = eig(&a).unwrap();
        for s in 0..5 {
            let mut rng = sampling::seeded_rng(48, s);
            let u = sampling::complex_gaussian_vec(&mut rng, 3);
            let metric = e.metric();
            let t = dot(&u, &metric.apply(&u)).re;
            let rho = dot(&u, &metric.apply(&a.matvec(&u))) / t;
            let grid = disk_grid(rho, 2.0 * rho.norm().max(0.5), 201);
            assert!(min_residual_check(&u, &a, &e, &grid).unwrap(), "stream {s}");
        }
    }

    #[test]
    fn min_residual_euclidean_special_case() {
        // for a normal matrix the metric is the identity and the check
        // reduces to the classical minimal-residual property of rq
        let a = crate::spectra::gen_normal(&[c(0.0, 0.0), c(1.0, 0.0), c(3.0, 0.0)], 15);
        let e = eig(&a).unwrap();
        let mut rng = sampling::seeded_rng(49, 0);
        let u = sampling::complex_gaussian_vec(&mut rng, 3);
        let rho = rq(&u, &a).unwrap();
        let grid = disk_grid(rho, 2.0 * rho.norm().max(0.5), 201);
        assert!(min_residual_check(&u, &a, &e, &grid).unwrap());
    }

    #[test]
    fn min_inner_product_symmetric_identity_case() {
        let a = gen_prescribed_real(&[1.0, 2.0, 4.0], 1.0, 16);
        let mut rng = sampling::seeded_rng(50, 0);
        let xr = sampling::real_gaussian_mat(&mut rng, 3, 1);
        let x: Vector = Array1::from_shape_fn(3, |i| c(xr[(i, 0)], 0.0));
        let rho = rq(&x, &a).unwrap().re;
        let grid = line_grid(rho, 2.0 * rho.abs().max(0.5), 201);
        assert!(min_inner_product_check(&x, &x, &a, &grid).unwrap());
    }

    #[test]
    fn min_inner_product_seeded_real_pair() {
        let a = gen_prescribed_real(&[1.0, 2.0, 4.0], 20.0, 17);
        for s in 0..5 {
            let mut rng = sampling::seeded_rng(51, s);
            let xm = sampling::real_gaussian_mat(&mut rng, 3, 2);
            let x: Vector = Array1::from_shape_fn(3, |i| c(xm[(i, 0)], 0.0));
            let y: Vector = Array1::from_shape_fn(3, |i| c(xm[(i, 1)], 0.0));
            let yr: Vec<f64> = (0..3).map(|i| xm[(i, 1)]).collect();
            let xr: Vec<f64> = (0..3).map(|i| xm[(i, 0)]).collect();
            let d: f64 = yr.iter().zip(&xr).map(|(p, q)| p * q).sum();
            let num: f64 = (0..3)
                .map(|i| (0..3).map(|j| yr[i] * a[(i, j)].re * xr[j]).sum::<f64>())
                .sum();
            let rho = num / d;
            let grid = line_grid(rho, 2.0 * rho.abs().max(0.5), 201);
            assert!(min_inner_product_check(&y, &x, &a, &grid).unwrap(), "stream {s}");
        }
    }

    #[test]
    fn min_inner_product_at_eigenpair_zero_gap() {
        let a = gen_prescribed_real(&[1.0, 2.0, 4.0], 10.0, 18);
        let e = eig(&a).unwrap();
        let pair = e.eigen_pair(2);
        let lam = pair.value.re;
        let grid = line_grid(lam, 2.0 * lam.abs(), 201);
        assert!(min_inner_product_check(&pair.left, &pair.right, &a, &grid).unwrap());
    }

    #[test]
    fn min_inner_product_rejects_complex_input() {
        let a = ComplexMatrix::from_rows(&[
            vec![c(0.0, 1.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
        ])
        .unwrap();
        let x: Vector = Array1::from_vec(vec![c(1.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(
            min_inner_product_check(&x, &x, &a, &[0.0]),
            Err(Error::NotRealInput(_))
        ));
    }

    #[test]
    fn stationarity_small_at_eigenpair_large_at_random() {
        let a = gen_prescribed(&[c(1.0, 0.0), c(2.0, 0.0), c(5.0, 0.0)], 50.0, 19);
        let e = eig(&a).unwrap();
        let norm_a = a.frobenius_norm();
        let pair = e.eigen_pair(1);
        let at_eigen = stationarity_gradient(&pair.left, &pair.right, &a, 1e-5).unwrap();
        assert!(at_eigen <= tol::STATIONARY_PASS * norm_a, "{at_eigen:.3e}");

        let mut rng = sampling::seeded_rng(52, 0);
        let x = sampling::complex_gaussian_vec(&mut rng, 3);
        let y = sampling::complex_gaussian_vec(&mut rng, 3);
        let at_random = stationarity_gradient(&y, &x, &a, 1e-5).unwrap();
        assert!(at_random >= tol::STATIONARY_FAIL * norm_a, "{at_random:.3e}");
    }

    #[test]
    fn stationarity_constant_quotient_is_flat() {
        let a = ComplexMatrix::identity(3).scale(c(7.0, 0.0));
        let mut rng = sampling::seeded_rng(53, 0);
        let x = sampling::complex_gaussian_vec(&mut rng, 3);
        let y = sampling::complex_gaussian_vec(&mut rng, 3);
        let g = stationarity_gradient(&y, &x, &a, 1e-5).unwrap();
        assert!(g <= 1e-8, "gradient {g:.3e} should vanish for A = λI");
    }

    #[test]
    fn homogeneity_of_naive_quotient() {
        let mut rng = sampling::seeded_rng(54, 0);
        let a = ComplexMatrix::unchecked(sampling::complex_gaussian_mat(&mut rng, 4, 4));
        let x = sampling::complex_gaussian_vec(&mut rng, 4);
        let y = sampling::complex_gaussian_vec(&mut rng, 4);
        let alpha = c(1.5, -2.0);
        let beta = c(-0.5, 0.25);
        let base = rq_naive(&y, &x, &a).unwrap();
        let scaled = rq_naive(&y.mapv(|z| z * alpha), &x.mapv(|z| z * beta), &a).unwrap();
        assert!((base - scaled).norm() <= 1e-13 * (1.0 + base.norm()));
        // ρ(y, x, βA) = β ρ(y, x, A)
        let scaled_matrix = rq_naive(&y, &x, &a.scale(beta)).unwrap();
        assert!((scaled_matrix - beta * base).norm() <= 1e-13 * (1.0 + base.norm()));
    }

    #[test]
    fn translation_invariance_of_constrained_quotient() {
        let a = gen_prescribed(&[c(1.0, 0.0), c(3.0, 0.0), c(6.0, 0.0)], 70.0, 20);
        let e = eig(&a).unwrap();
        let mu = c(0.75, -0.5);
        let shifted_a = a.shift(-mu);
        let shifted_e = e.shifted(mu);
        let mut rng = sampling::seeded_rng(55, 0);
        let x = sampling::complex_gaussian_vec(&mut rng, 3);
        let base = rq_gen(&x, &a, &e, None).unwrap().value;
        let shifted = rq_gen(&x, &shifted_a, &shifted_e, None).unwrap().value;
        assert!((shifted - (base - mu)).norm() <= 1e-12 * (1.0 + base.norm()));
    }

    #[test]
    fn oblique_projection_identities() {
        let mut rng = sampling::seeded_rng(56, 0);
        let a = ComplexMatrix::unchecked(sampling::complex_gaussian_mat(&mut rng, 5, 5));
        for s in 0..10 {
            let mut r = sampling::seeded_rng(57, s);
            let x = sampling::complex_gaussian_vec(&mut r, 5);
            let y = sampling::complex_gaussian_vec(&mut r, 5);
            let rho = match rq_naive(&y, &x, &a) {
                Ok(v) => v,
                Err(_) => continue,
            };
            let (rx, ry) = residuals(&y, &x, rho, &a).unwrap();
            let scale = a.frobenius_norm() * vec_norm(&x) * vec_norm(&y);
            assert!(dot(&y, &rx).norm() <= 1e-12 * scale, "y not orthogonal to r_x");
            assert!(dot(&x, &ry).norm() <= 1e-12 * scale, "x not orthogonal to r_y");
        }
    }

    #[test]
    fn all_three_quotients_agree_at_eigenpairs() {
        let a = gen_prescribed(&[c(1.0, 0.0), c(2.5, 0.0), c(4.0, 0.0)], 90.0, 21);
        let e = eig(&a).unwrap();
        for i in 0..3 {
            let pair = e.eigen_pair(i);
            let lam = pair.value;
            let tolv = 1e-9 * e.cond_v();
            let naive = rq_naive(&pair.left, &pair.right, &a).unwrap();
            assert!((naive - lam).norm() <= tolv);
            let gen = rq_gen(&pair.right, &a, &e, None).unwrap().value;
            assert!((gen - lam).norm() <= tolv);
            let right_rq = rq(&pair.right, &a).unwrap();
            assert!((right_rq - lam).norm() <= tolv);
            let left_rq = rq(&pair.left, &a).unwrap();
            assert!((left_rq - lam).norm() <= tolv);
        }
    }
}
