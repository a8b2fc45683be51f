//! Eigendecomposition with left-eigenvector recovery, nondefectiveness
//! diagnostics, and generators of test matrices with prescribed spectra
//! and controlled eigenvector conditioning.
//!
//! For a nondefective `A = V Λ V⁻¹`, the rows of `V⁻¹` are left
//! eigenvectors; the pairing `v_r = (VV*) v_l` ties each left vector to
//! its right partner through the metric `H = (VV*)⁻¹`. Everything here
//! derives left data from one LU solve against `V`, never from a second
//! eigendecomposition of `A*`, so the biorthogonal pairing is exact by
//! construction.

use ndarray::{s, Array1, Array2};
use ndarray_linalg::{Eig, EigVals, Inverse, QR};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matcore::{cond_2norm, metric_from_basis_with, ComplexMatrix, Metric};
use crate::{sampling, tol, Vector};

/// Full spectral data of a nondefective matrix: sorted eigenvalues, the
/// normalized right-eigenvector basis `V`, its inverse, a condition
/// estimate of `V`, and the induced metric `H = (VV*)⁻¹`.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    lambda: Vec<Complex64>,
    v: ComplexMatrix,
    v_inv: ComplexMatrix,
    cond_v: f64,
    metric: Metric,
}

/// One eigentriple: eigenvalue with its right and left eigenvectors.
/// The left vector is scaled so that `v_l* v_r = 1` exactly.
#[derive(Debug, Clone)]
pub struct EigenPair {
    pub value: Complex64,
    pub right: Vector,
    pub left: Vector,
}

impl EigenSystem {
    pub fn dim(&self) -> usize {
        self.v.dim()
    }

    /// Eigenvalues sorted by real part, then imaginary part, ascending.
    pub fn lambda(&self) -> &[Complex64] {
        &self.lambda
    }

    /// Right-eigenvector basis; columns are unit 2-norm and phase-fixed.
    pub fn v(&self) -> &ComplexMatrix {
        &self.v
    }

    pub fn v_inv(&self) -> &ComplexMatrix {
        &self.v_inv
    }

    /// 2-norm condition estimate of `V`.
    pub fn cond_v(&self) -> f64 {
        self.cond_v
    }

    /// The metric `H = (VV*)⁻¹` induced by the eigenbasis.
    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    /// `max(1, max |λ|)`: the scale against which relative spectral
    /// tolerances are measured.
    pub fn spectral_scale(&self) -> f64 {
        self.lambda
            .iter()
            .map(|z| z.norm())
            .fold(1.0, f64::max)
    }

    /// Right eigenvector `i` (column of `V`).
    pub fn right_vector(&self, i: usize) -> Vector {
        self.v.array().column(i).to_owned()
    }

    /// Left eigenvector `i`: column `i` of `(V⁻¹)*`, scaled so that
    /// `v_l* v_r = 1`.
    pub fn left_vector(&self, i: usize) -> Vector {
        let n = self.dim();
        Array1::from_shape_fn(n, |r| self.v_inv[(i, r)].conj())
    }

    pub fn eigen_pair(&self, i: usize) -> EigenPair {
        EigenPair {
            value: self.lambda[i],
            right: self.right_vector(i),
            left: self.left_vector(i),
        }
    }

    /// Eigensystem of `A - μI`: same basis, shifted eigenvalues. The
    /// sort order is preserved since every eigenvalue moves by the same
    /// amount.
    pub fn shifted(&self, mu: Complex64) -> EigenSystem {
        EigenSystem {
            lambda: self.lambda.iter().map(|&l| l - mu).collect(),
            v: self.v.clone(),
            v_inv: self.v_inv.clone(),
            cond_v: self.cond_v,
            metric: self.metric.clone(),
        }
    }

    /// Real parts of the spectrum, ascending, after checking that the
    /// spectrum is real to within `tol::REAL_SPECTRUM_TOL`.
    pub fn real_eigenvalues(&self) -> Result<Vec<f64>> {
        if !is_real_spectrum(self, tol::REAL_SPECTRUM_TOL) {
            let max_imag = self
                .lambda
                .iter()
                .map(|z| z.im.abs())
                .fold(0.0, f64::max);
            return Err(Error::ComplexSpectrum { max_imag });
        }
        Ok(self.lambda.iter().map(|z| z.re).collect())
    }
}

/// Full eigendecomposition with the default conditioning limit.
pub fn eig(a: &ComplexMatrix) -> Result<EigenSystem> {
    eig_with(a, tol::COND_LIMIT)
}

/// Full eigendecomposition with an explicit conditioning limit.
///
/// Eigenvalues are sorted (real part, then imaginary part, ascending),
/// columns of `V` are unit 2-norm with the first large component made
/// real positive, eigenvectors of clustered eigenvalues are
/// re-orthonormalized, and `V⁻¹` comes from a direct LU solve against
/// `V`.
pub fn eig_with(a: &ComplexMatrix, cond_limit: f64) -> Result<EigenSystem> {
    let n = a.dim();
    let (vals, vecs) = a
        .array()
        .eig()
        .map_err(|e| Error::backend("eig", e))?;

    // sort by (Re, Im) ascending
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        vals[i]
            .re
            .total_cmp(&vals[j].re)
            .then(vals[i].im.total_cmp(&vals[j].im))
    });
    let lambda: Vec<Complex64> = order.iter().map(|&i| vals[i]).collect();
    let mut v: Array2<Complex64> = Array2::zeros((n, n));
    for (dst, &src) in order.iter().enumerate() {
        let mut col = v.column_mut(dst);
        col.assign(&vecs.column(src));
        let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::NonConvergence("zero eigenvector column".into()));
        }
        col.mapv_inplace(|z| z / norm);
    }

    // residual gate on the raw (sorted, normalized) decomposition
    let a_norm = a.frobenius_norm();
    let residual = eigen_residual(a.array(), &lambda, &v);
    if residual > tol::EIG_TOL * a_norm {
        return Err(Error::NonConvergence(format!(
            "eigen-residual {residual:.3e} exceeds {:.3e}",
            tol::EIG_TOL * a_norm
        )));
    }

    // re-orthonormalize eigenvectors of clustered eigenvalues; exact for
    // true multiplicities, where any basis of the eigenspace is valid
    let scale = lambda.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        while j < n && (lambda[j] - lambda[j - 1]).norm() <= tol::CLUSTER_TOL * scale {
            j += 1;
        }
        if j - i >= 2 {
            let block = v.slice(s![.., i..j]).to_owned();
            let (q, _) = block.qr().map_err(|e| Error::backend("qr", e))?;
            v.slice_mut(s![.., i..j]).assign(&q);
        }
        i = j;
    }

    phase_fix_columns(&mut v);

    let v = ComplexMatrix::unchecked(v);
    let cond_v = cond_2norm(v.array())?;
    if !cond_v.is_finite() || cond_v > cond_limit {
        return Err(Error::DefectiveMatrix {
            cond: cond_v,
            limit: cond_limit,
        });
    }
    let v_inv = ComplexMatrix::unchecked(
        v.array()
            .inv()
            .map_err(|e| Error::backend("inv", e))?,
    );
    let metric = metric_from_basis_with(&v, cond_limit)?;

    Ok(EigenSystem {
        lambda,
        v,
        v_inv,
        cond_v,
        metric,
    })
}

/// Eigenvalues only, sorted, without the nondefectiveness gate. Works for
/// defective matrices too (eigenvalues stay well defined).
pub fn eigenvalues(a: &ComplexMatrix) -> Result<Vec<Complex64>> {
    let vals = a
        .array()
        .eigvals()
        .map_err(|e| Error::backend("eigvals", e))?;
    let mut out: Vec<Complex64> = vals.to_vec();
    out.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    Ok(out)
}

/// Left eigenvectors: the columns of `(V⁻¹)*`, index-aligned with
/// `e.lambda()`. Each satisfies `w* A = λ w*` and `(VV*) w = v_r`.
pub fn left_eigenvectors(e: &EigenSystem) -> Vec<Vector> {
    (0..e.dim()).map(|i| e.left_vector(i)).collect()
}

/// True iff `max |Im λ| <= tol · max(1, max |λ|)`.
pub fn is_real_spectrum(e: &EigenSystem, tol: f64) -> bool {
    let scale = e.spectral_scale();
    e.lambda().iter().all(|z| z.im.abs() <= tol * scale)
}

/// Test matrix `A = V Λ V⁻¹` with prescribed spectrum and an eigenbasis
/// conditioned to `cond_target` exactly (constructed as `Q₁ Σ Q₂*` with
/// geometrically spaced singular values).
///
/// Deterministic: the same seed yields a bit-identical matrix.
pub fn gen_prescribed(spectrum: &[Complex64], cond_target: f64, seed: u64) -> ComplexMatrix {
    assert!(cond_target >= 1.0, "cond_target must be >= 1");
    assert!(!spectrum.is_empty(), "spectrum must be nonempty");
    let n = spectrum.len();
    let mut rng = sampling::seeded_rng(seed, 0);
    let q1 = sampling::unitary_from(&sampling::complex_gaussian_mat(&mut rng, n, n));
    let q2 = sampling::unitary_from(&sampling::complex_gaussian_mat(&mut rng, n, n));
    let mut v = q1;
    for (j, s) in singular_profile(n, cond_target).into_iter().enumerate() {
        for i in 0..n {
            v[(i, j)] *= s;
        }
    }
    let q2h = Array2::from_shape_fn((n, n), |(i, j)| q2[(j, i)].conj());
    let v = v.dot(&q2h);
    let v_inv = v.inv().expect("constructed basis is invertible");
    let mut vl = v.clone();
    for (j, &l) in spectrum.iter().enumerate() {
        for i in 0..n {
            vl[(i, j)] *= l;
        }
    }
    ComplexMatrix::unchecked(vl.dot(&v_inv))
}

/// Normal test matrix `Q Λ Q*` with the given spectrum.
pub fn gen_normal(spectrum: &[Complex64], seed: u64) -> ComplexMatrix {
    assert!(!spectrum.is_empty(), "spectrum must be nonempty");
    let n = spectrum.len();
    let mut rng = sampling::seeded_rng(seed, 0);
    let q = sampling::unitary_from(&sampling::complex_gaussian_mat(&mut rng, n, n));
    let mut ql = q.clone();
    for (j, &l) in spectrum.iter().enumerate() {
        for i in 0..n {
            ql[(i, j)] *= l;
        }
    }
    let qh = Array2::from_shape_fn((n, n), |(i, j)| q[(j, i)].conj());
    ComplexMatrix::unchecked(ql.dot(&qh))
}

/// Real-entried counterpart of [`gen_prescribed`]: real spectrum, real
/// orthogonal factors, so the result has exactly zero imaginary parts.
pub fn gen_prescribed_real(spectrum: &[f64], cond_target: f64, seed: u64) -> ComplexMatrix {
    assert!(cond_target >= 1.0, "cond_target must be >= 1");
    assert!(!spectrum.is_empty(), "spectrum must be nonempty");
    let n = spectrum.len();
    let mut rng = sampling::seeded_rng(seed, 0);
    let q1 = sampling::orthogonal_from(&sampling::real_gaussian_mat(&mut rng, n, n));
    let q2 = sampling::orthogonal_from(&sampling::real_gaussian_mat(&mut rng, n, n));
    let mut v = q1;
    for (j, s) in singular_profile(n, cond_target).into_iter().enumerate() {
        for i in 0..n {
            v[(i, j)] *= s;
        }
    }
    let v = v.dot(&q2.t());
    let v_inv = v.inv().expect("constructed basis is invertible");
    let mut vl = v.clone();
    for (j, &l) in spectrum.iter().enumerate() {
        for i in 0..n {
            vl[(i, j)] *= l;
        }
    }
    let a_real = vl.dot(&v_inv);
    ComplexMatrix::unchecked(a_real.mapv(|x| Complex64::new(x, 0.0)))
}

fn singular_profile(n: usize, cond_target: f64) -> Vec<f64> {
    if n == 1 {
        return vec![1.0];
    }
    (0..n)
        .map(|k| cond_target.powf(-(k as f64) / (n as f64 - 1.0)))
        .collect()
}

fn eigen_residual(a: &Array2<Complex64>, lambda: &[Complex64], v: &Array2<Complex64>) -> f64 {
    let av = a.dot(v);
    let mut sum = 0.0;
    for j in 0..lambda.len() {
        for i in 0..lambda.len() {
            sum += (av[(i, j)] - lambda[j] * v[(i, j)]).norm_sqr();
        }
    }
    sum.sqrt()
}

fn phase_fix_columns(v: &mut Array2<Complex64>) {
    let n = v.nrows();
    let thr = 1.0 / (n as f64).sqrt();
    for j in 0..n {
        let col = v.column(j);
        let idx = col
            .iter()
            .position(|z| z.norm() > thr)
            .unwrap_or_else(|| {
                col.iter()
                    .enumerate()
                    .max_by(|(_, a), (_, b)| a.norm().total_cmp(&b.norm()))
                    .map(|(i, _)| i)
                    .unwrap_or(0)
            });
        let z = v[(idx, j)];
        if z.norm() > 0.0 {
            let phase = (z / z.norm()).conj();
            let mut col = v.column_mut(j);
            col.mapv_inplace(|w| w * phase);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{dot, vec_norm};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eig_diagonal_sorted() {
        let a = ComplexMatrix::from_real_rows(&[vec![3.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let e = eig(&a).unwrap();
        assert!((e.lambda()[0] - c(1.0, 0.0)).norm() <= 1e-14);
        assert!((e.lambda()[1] - c(3.0, 0.0)).norm() <= 1e-14);
        // V is a permutation of I up to sign/phase
        for j in 0..2 {
            let col = e.right_vector(j);
            let nonzeros = col.iter().filter(|z| z.norm() > 1e-12).count();
            assert_eq!(nonzeros, 1);
        }
    }

    #[test]
    fn eig_rotation_pure_imaginary_pair() {
        let a = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![-1.0, 0.0]]).unwrap();
        let e = eig(&a).unwrap();
        // sorted by (Re, Im): -i before +i
        assert!((e.lambda()[0] - c(0.0, -1.0)).norm() <= 1e-12);
        assert!((e.lambda()[1] - c(0.0, 1.0)).norm() <= 1e-12);
    }

    #[test]
    fn eig_recovers_prescribed_spectrum() {
        let spec = [c(1.0, 0.0), c(2.0, 0.0), c(5.0, 0.0)];
        let a = gen_prescribed(&spec, 10.0, 7);
        let e = eig(&a).unwrap();
        for (got, want) in e.lambda().iter().zip(spec.iter()) {
            assert!((got - want).norm() <= 1e-10, "{got} vs {want}");
        }
    }

    #[test]
    fn eig_rejects_defective() {
        let jordan =
            ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        match eig(&jordan) {
            Err(Error::DefectiveMatrix { .. }) => {}
            other => panic!("expected DefectiveMatrix, got {other:?}"),
        }
    }

    #[test]
    fn left_eigenvectors_hermitian_match_right() {
        let a = gen_normal(&[c(-1.0, 0.0), c(0.5, 0.0), c(2.0, 0.0)], 3);
        let e = eig(&a).unwrap();
        for i in 0..3 {
            let r = e.right_vector(i);
            let l = e.left_vector(i);
            // same direction up to a scalar
            let s = dot(&r, &l);
            let diff = vec_norm(&(&l - &r.mapv(|z| z * s)));
            assert!(diff <= 1e-12 * vec_norm(&l).max(1.0), "i={i} diff={diff}");
        }
    }

    #[test]
    fn left_eigenvector_shear_hand_example() {
        // V = [[1,1],[0,1]], Λ = diag(1,2) => A = [[1,1],[0,2]];
        // the left eigenvector for λ=1 is (1,-1) up to scale.
        let a = ComplexMatrix::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 2.0]]).unwrap();
        let e = eig(&a).unwrap();
        let l0 = e.left_vector(0);
        let ratio = l0[1] / l0[0];
        assert!((ratio - c(-1.0, 0.0)).norm() <= 1e-12);
        // w* A = λ w*
        let wa = a.adjoint_matvec(&l0);
        let diff = vec_norm(&(&wa - &l0.mapv(|z| z * e.lambda()[0].conj())));
        assert!(diff <= 1e-12);
    }

    #[test]
    fn biorthogonality_seeded_10x10() {
        let spec: Vec<Complex64> = (0..10).map(|k| c(k as f64, ((k * k) % 5) as f64)).collect();
        let a = gen_prescribed(&spec, 30.0, 17);
        let e = eig(&a).unwrap();
        let lefts = left_eigenvectors(&e);
        for i in 0..10 {
            for j in 0..10 {
                let p = dot(&lefts[i], &e.right_vector(j));
                if i == j {
                    assert!(p.norm() > 1e-6, "diagonal pairing vanished at {i}");
                } else {
                    assert!(p.norm() <= 1e-10, "off-diagonal ({i},{j}) = {p}");
                }
            }
        }
    }

    #[test]
    fn duality_right_from_left_through_gram() {
        let spec = [c(1.0, 0.0), c(2.0, 1.0), c(-0.5, -2.0), c(3.0, 0.0)];
        let a = gen_prescribed(&spec, 50.0, 23);
        let e = eig(&a).unwrap();
        let vv = crate::matcore::gram(e.v());
        for i in 0..4 {
            let l = e.left_vector(i);
            let r = e.right_vector(i);
            let mapped = vv.matvec(&l);
            // mapped should equal r exactly (up to conditioning roundoff)
            let diff = vec_norm(&(&mapped - &r));
            assert!(diff <= 1e-9 * e.cond_v(), "i={i} diff={diff:.3e}");
        }
    }

    #[test]
    fn is_real_spectrum_cases() {
        let a = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]);
        let e = eig(&a).unwrap();
        assert!(is_real_spectrum(&e, 1e-10));

        let rot = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![-1.0, 0.0]]).unwrap();
        let e = eig(&rot).unwrap();
        assert!(!is_real_spectrum(&e, 1e-10));

        let g = gen_prescribed(&[c(-2.0, 0.0), c(0.0, 0.0), c(3.0, 0.0)], 50.0, 3);
        let e = eig(&g).unwrap();
        assert!(is_real_spectrum(&e, 1e-10));
    }

    #[test]
    fn gen_prescribed_cond_one_is_normal() {
        let a = gen_prescribed(&[c(1.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)], 1.0, 5);
        assert!(crate::matcore::is_normal(&a, 1e-12));
    }

    #[test]
    fn gen_prescribed_recovery_and_determinism() {
        let spec = [c(1.0, 0.0), c(2.0, 0.0)];
        let a = gen_prescribed(&spec, 100.0, 1);
        let e = eig(&a).unwrap();
        assert!((e.lambda()[0] - spec[0]).norm() <= 1e-9);
        assert!((e.lambda()[1] - spec[1]).norm() <= 1e-9);

        let b = gen_prescribed(&spec, 100.0, 1);
        assert_eq!(a, b, "same seed must give a bit-identical matrix");
    }

    #[test]
    fn gen_normal_cases() {
        let a = gen_normal(&[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)], 9);
        assert!(crate::matcore::is_normal(&a, 1e-12));
        let vals = eigenvalues(&a).unwrap();
        let want = [c(0.0, 0.0), c(0.0, 1.0), c(1.0, 0.0)];
        for (got, want) in vals.iter().zip(want.iter()) {
            assert!((got - want).norm() <= 1e-12);
        }

        // all-real spectrum gives a Hermitian matrix
        let h = gen_normal(&[c(-1.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)], 4);
        assert!(h.hermitian_deviation() <= 1e-12);

        // repeated single eigenvalue collapses to a scalar matrix
        let s = gen_normal(&[c(5.0, 0.0); 4], 2);
        let diff = s.sub(&ComplexMatrix::identity(4).scale(c(5.0, 0.0)));
        assert!(diff.frobenius_norm() <= 1e-12 * 5.0);
    }

    #[test]
    fn gen_prescribed_real_is_real_with_right_spectrum() {
        let a = gen_prescribed_real(&[1.0, 2.0, 4.0], 20.0, 6);
        assert_eq!(a.max_imag_abs(), 0.0);
        let e = eig(&a).unwrap();
        for (got, want) in e.lambda().iter().zip([1.0, 2.0, 4.0]) {
            assert!((got - c(want, 0.0)).norm() <= 1e-10);
        }
    }

    #[test]
    fn reconstruction_residual() {
        let spec = [c(1.0, 1.0), c(-2.0, 0.5), c(4.0, -1.0), c(0.0, 0.0)];
        for seed in [1u64, 2, 3] {
            let a = gen_prescribed(&spec, 1e3, seed);
            let e = eig(&a).unwrap();
            let lam = ComplexMatrix::diagonal(e.lambda());
            let recon = e.v().matmul(&lam).matmul(e.v_inv());
            let rel = recon.sub(&a).frobenius_norm() / a.frobenius_norm();
            assert!(rel <= 1e-9 * e.cond_v(), "seed {seed}: rel {rel:.3e}");
        }
    }

    #[test]
    fn ordering_is_deterministic() {
        let a = gen_prescribed(&[c(1.0, -1.0), c(1.0, 1.0), c(0.0, 0.0)], 40.0, 8);
        let e1 = eig(&a).unwrap();
        let e2 = eig(&a).unwrap();
        assert_eq!(e1.lambda(), e2.lambda());
        assert_eq!(e1.v(), e2.v());
    }

    #[test]
    fn shifted_system_shifts_spectrum_only() {
        let a = gen_prescribed(&[c(1.0, 0.0), c(3.0, 0.0)], 10.0, 12);
        let e = eig(&a).unwrap();
        let mu = c(0.5, -0.25);
        let es = e.shifted(mu);
        for (s, o) in es.lambda().iter().zip(e.lambda()) {
            assert!((s - (o - mu)).norm() <= 1e-15);
        }
        assert_eq!(es.v(), e.v());
    }
}
