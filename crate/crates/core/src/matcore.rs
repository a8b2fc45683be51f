//! Dense complex matrix arithmetic, Hermitian-part extraction, normality
//! tests, and generalized (H-) inner products.
//!
//! [`ComplexMatrix`] is the universal carrier: a square, finite-entry,
//! dense matrix over `Complex64`. [`Metric`] packages a Hermitian positive
//! definite matrix `H` together with its triangular factor `C` (`H = C*C`,
//! `C` upper triangular), which is what the Givens reduction and all
//! H-norms actually consume.

use ndarray::{Array1, Array2};
use ndarray_linalg::{Cholesky, SVD, UPLO};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::{dot, tol, vec_norm, Vector};

/// Dense n×n complex matrix. Square with all entries finite by
/// construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    data: Array2<Complex64>,
}

impl ComplexMatrix {
    /// Wraps an owned array, validating squareness and finiteness.
    pub fn new(data: Array2<Complex64>) -> Result<Self> {
        let (r, c) = data.dim();
        if r != c {
            return Err(Error::DimensionMismatch(format!(
                "matrix must be square, got {r}x{c}"
            )));
        }
        if r == 0 {
            return Err(Error::EmptyInput);
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidArgument(
                "matrix entries must be finite".into(),
            ));
        }
        Ok(Self { data })
    }

    /// Builds from row-major nested slices.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(
                "rows must all have length n".into(),
            ));
        }
        let flat: Vec<Complex64> = rows.iter().flatten().copied().collect();
        let data = Array2::from_shape_vec((n, n), flat)
            .expect("shape checked above");
        Self::new(data)
    }

    /// Builds from real row-major entries.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let converted: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&converted)
    }

    // Internal: wrap a computed result without re-validating.
    pub(crate) fn unchecked(data: Array2<Complex64>) -> Self {
        debug_assert_eq!(data.nrows(), data.ncols());
        Self { data }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            data: Array2::zeros((n, n)),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            data: Array2::eye(n),
        }
    }

    /// Diagonal matrix from the given diagonal entries.
    pub fn diagonal(diag: &[Complex64]) -> Self {
        let n = diag.len();
        let mut data = Array2::zeros((n, n));
        for (i, &d) in diag.iter().enumerate() {
            data[(i, i)] = d;
        }
        Self { data }
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn array(&self) -> &Array2<Complex64> {
        &self.data
    }

    pub fn into_array(self) -> Array2<Complex64> {
        self.data
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.dim();
        Self {
            data: Array2::from_shape_fn((n, n), |(i, j)| self.data[(j, i)].conj()),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest |Im entry|; used for realness validation.
    pub fn max_imag_abs(&self) -> f64 {
        self.data.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    pub fn matmul(&self, other: &Self) -> Self {
        Self {
            data: self.data.dot(&other.data),
        }
    }

    pub fn matvec(&self, x: &Vector) -> Vector {
        self.data.dot(x)
    }

    /// Adjoint-times-vector, `A* x`, without forming the adjoint.
    pub fn adjoint_matvec(&self, x: &Vector) -> Vector {
        let n = self.dim();
        Array1::from_shape_fn(n, |j| {
            (0..n).map(|i| self.data[(i, j)].conj() * x[i]).sum()
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            data: &self.data + &other.data,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            data: &self.data - &other.data,
        }
    }

    pub fn scale(&self, alpha: Complex64) -> Self {
        Self {
            data: self.data.mapv(|z| alpha * z),
        }
    }

    /// `A + alpha I`.
    pub fn shift(&self, alpha: Complex64) -> Self {
        let mut data = self.data.clone();
        for i in 0..self.dim() {
            data[(i, i)] += alpha;
        }
        Self { data }
    }

    /// Relative deviation from Hermitian symmetry, `||A - A*|| / ||A||`.
    pub fn hermitian_deviation(&self) -> f64 {
        let norm = self.frobenius_norm();
        if norm == 0.0 {
            return 0.0;
        }
        self.sub(&self.adjoint()).frobenius_norm() / norm
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, idx: (usize, usize)) -> &Complex64 {
        &self.data[idx]
    }
}

/// Hermitian part `H(A) = (A + A*)/2`, with conjugate symmetry enforced
/// elementwise so the result is exactly Hermitian (real diagonal,
/// `h[j][i] == conj(h[i][j])` bit for bit).
pub fn hermitian_part(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.dim();
    let mut data = Array2::zeros((n, n));
    for i in 0..n {
        data[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let hij = 0.5 * (a[(i, j)] + a[(j, i)].conj());
            data[(i, j)] = hij;
            data[(j, i)] = hij.conj();
        }
    }
    ComplexMatrix { data }
}

/// Normality test: `||AA* - A*A||_F <= tol ||A||_F²`.
pub fn is_normal(a: &ComplexMatrix, tol: f64) -> bool {
    let adj = a.adjoint();
    let comm = a.matmul(&adj).sub(&adj.matmul(a));
    let scale = a.frobenius_norm();
    comm.frobenius_norm() <= tol * scale * scale
}

/// Hermitian positive definite metric `H` with its upper-triangular
/// factor `C` satisfying `H = C*C`.
///
/// The factor, not `H` itself, is what Givens congruences and H-norms
/// consume, so it is computed once at construction and stored.
#[derive(Debug, Clone)]
pub struct Metric {
    h: ComplexMatrix,
    factor: ComplexMatrix,
    condition_estimate: f64,
}

impl Metric {
    /// Euclidean metric `H = I`.
    pub fn euclidean(n: usize) -> Self {
        Self {
            h: ComplexMatrix::identity(n),
            factor: ComplexMatrix::identity(n),
            condition_estimate: 1.0,
        }
    }

    /// Builds a metric from an explicitly given Hermitian positive
    /// definite matrix.
    pub fn from_matrix(h: ComplexMatrix) -> Result<Self> {
        let dev = h.hermitian_deviation();
        if dev > tol::HERM_TOL {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let h = hermitian_part(&h); // exact symmetrization
        let factor = cholesky_upper(&h)?;
        let condition_estimate = cond_2norm(factor.array())?;
        Ok(Self {
            h,
            factor,
            condition_estimate,
        })
    }

    pub fn h(&self) -> &ComplexMatrix {
        &self.h
    }

    /// Upper-triangular `C` with `C*C = H`.
    pub fn factor(&self) -> &ComplexMatrix {
        &self.factor
    }

    /// 2-norm condition estimate of the factor `C` (equivalently of the
    /// generating basis `V` when built by [`metric_from_basis`], since
    /// `cond(C)² = cond(H) = cond(V)²`).
    pub fn condition_estimate(&self) -> f64 {
        self.condition_estimate
    }

    pub fn dim(&self) -> usize {
        self.h.dim()
    }

    /// `H x`.
    pub fn apply(&self, x: &Vector) -> Vector {
        self.h.matvec(x)
    }

    /// `C x`; `||Cx||` is the H-norm of `x`.
    pub fn apply_factor(&self, x: &Vector) -> Vector {
        self.factor.matvec(x)
    }
}

/// Metric `H = (VV*)⁻¹` induced by a nonsingular basis `V`, using the
/// default condition limit.
pub fn metric_from_basis(v: &ComplexMatrix) -> Result<Metric> {
    metric_from_basis_with(v, tol::COND_LIMIT)
}

/// Metric `H = (VV*)⁻¹` with an explicit condition limit.
///
/// `VV*` is formed and factored (`VV* = U*U`), the inverse is obtained by
/// triangular solves against the identity, and the stored factor comes
/// from a second triangular factorization of the resulting `H`.
pub fn metric_from_basis_with(v: &ComplexMatrix, cond_limit: f64) -> Result<Metric> {
    let cond = cond_2norm(v.array())?;
    if !cond.is_finite() || cond > cond_limit {
        return Err(Error::SingularBasis {
            cond,
            limit: cond_limit,
        });
    }
    let b = gram(v); // VV*, exactly Hermitian
    let u = cholesky_upper(&b)?;
    // H = B⁻¹ column by column: U*U x = e_i.
    let n = v.dim();
    let mut h = Array2::zeros((n, n));
    for i in 0..n {
        let mut e = Array1::zeros(n);
        e[i] = Complex64::new(1.0, 0.0);
        let y = solve_lower_adjoint(&u, &e);
        let x = solve_upper(&u, &y);
        for r in 0..n {
            h[(r, i)] = x[r];
        }
    }
    let h = hermitian_part(&ComplexMatrix::unchecked(h));
    let factor = cholesky_upper(&h)?;
    Ok(Metric {
        h,
        factor,
        condition_estimate: cond,
    })
}

/// Generalized inner product `<x, y>_H = y* H x` (conjugate-linear in
/// `y`).
pub fn h_inner(x: &Vector, y: &Vector, m: &Metric) -> Result<Complex64> {
    if x.len() != m.dim() || y.len() != m.dim() {
        return Err(Error::DimensionMismatch(format!(
            "vectors of length {} and {} against metric of dimension {}",
            x.len(),
            y.len(),
            m.dim()
        )));
    }
    Ok(dot(y, &m.apply(x)))
}

/// H-norm `||x||_H = sqrt(x* H x) = ||C x||`, evaluated through the
/// stored factor.
pub fn h_norm(x: &Vector, m: &Metric) -> Result<f64> {
    if x.len() != m.dim() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} against metric of dimension {}",
            x.len(),
            m.dim()
        )));
    }
    Ok(vec_norm(&m.apply_factor(x)))
}

// ---------------------------------------------------------------------
// internal linear-algebra helpers
// ---------------------------------------------------------------------

/// `V V*`, symmetrized exactly.
pub(crate) fn gram(v: &ComplexMatrix) -> ComplexMatrix {
    let prod = ComplexMatrix::unchecked(v.array().dot(&v.adjoint().into_array()));
    hermitian_part(&prod)
}

/// Upper-triangular Cholesky factor `U` with `A = U*U`.
pub(crate) fn cholesky_upper(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let u = a
        .array()
        .cholesky(UPLO::Upper)
        .map_err(|_| Error::NotPositiveDefinite)?;
    Ok(ComplexMatrix::unchecked(u))
}

/// 2-norm condition number via singular values.
pub(crate) fn cond_2norm(a: &Array2<Complex64>) -> Result<f64> {
    let (_, s, _) = a
        .svd(false, false)
        .map_err(|e| Error::backend("svd", e))?;
    let smax = s.iter().cloned().fold(0.0, f64::max);
    let smin = s.iter().cloned().fold(f64::INFINITY, f64::min);
    if smin <= 0.0 || !smin.is_finite() {
        return Ok(f64::INFINITY);
    }
    Ok(smax / smin)
}

/// Solves `U x = b` for upper-triangular `U` by back substitution.
pub(crate) fn solve_upper(u: &ComplexMatrix, b: &Vector) -> Vector {
    let n = u.dim();
    let mut x = b.clone();
    for i in (0..n).rev() {
        let mut s = x[i];
        for j in (i + 1)..n {
            s -= u[(i, j)] * x[j];
        }
        x[i] = s / u[(i, i)];
    }
    x
}

/// Solves `U* x = b` for upper-triangular `U` (so `U*` is lower
/// triangular) by forward substitution.
pub(crate) fn solve_lower_adjoint(u: &ComplexMatrix, b: &Vector) -> Vector {
    let n = u.dim();
    let mut x = b.clone();
    for i in 0..n {
        let mut s = x[i];
        for j in 0..i {
            s -= u[(j, i)].conj() * x[j];
        }
        x[i] = s / u[(i, i)].conj();
    }
    x
}

/// Right division `T U⁻¹` for upper-triangular `U`, column by column from
/// `X U = T`.
pub(crate) fn solve_upper_right(t: &ComplexMatrix, u: &ComplexMatrix) -> ComplexMatrix {
    let n = t.dim();
    let mut x: Array2<Complex64> = Array2::zeros((n, n));
    for j in 0..n {
        for i in 0..n {
            let mut s = t[(i, j)];
            for k in 0..j {
                s -= x[(i, k)] * u[(k, j)];
            }
            x[(i, j)] = s / u[(j, j)];
        }
    }
    ComplexMatrix::unchecked(x)
}
