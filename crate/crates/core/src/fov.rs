//! Classical field of values `F(A)` via a supporting-line angle sweep,
//! the Givens field `F_H(A)` via congruence reduction, and the convex
//! polygon geometry (hull, containment, Hausdorff distance) that carries
//! every set in this crate.
//!
//! The sweep rests on the support-function identity: for unit `x`,
//! `Re(e^{iθ} x*Ax) = x* H(e^{iθ}A) x <= λ_max(H(e^{iθ}A))`, and the
//! maximizing eigenvector turns the bound into a boundary point of
//! `F(A)`. The returned polygon is therefore always inscribed in the
//! true field.

use num_complex::Complex64;
use std::f64::consts::TAU;

use ndarray_linalg::{Eigh, UPLO};

use crate::error::{Error, Result};
use crate::matcore::{hermitian_part, solve_upper_right, ComplexMatrix, Metric};
use crate::{dot, tol, vec_norm, Vector};

/// Convex region in the complex plane: counterclockwise vertex ring with
/// the lowest-then-leftmost vertex first, no duplicate and no collinear
/// interior vertices. Degenerate forms are a single point (one vertex)
/// and a segment (two vertices).
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    vertices: Vec<Complex64>,
}

impl Polygon {
    pub fn vertices(&self) -> &[Complex64] {
        &self.vertices
    }

    pub fn is_point(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn is_segment(&self) -> bool {
        self.vertices.len() == 2
    }

    /// Largest coordinate magnitude over the vertices.
    pub fn magnitude(&self) -> f64 {
        self.vertices
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// `[min Re, max Re]` over the region (attained at vertices for a
    /// convex set).
    pub fn real_extent(&self) -> (f64, f64) {
        let lo = self.vertices.iter().map(|z| z.re).fold(f64::INFINITY, f64::min);
        let hi = self
            .vertices
            .iter()
            .map(|z| z.re)
            .fold(f64::NEG_INFINITY, f64::max);
        (lo, hi)
    }

    pub fn translate(&self, alpha: Complex64) -> Polygon {
        let moved: Vec<Complex64> = self.vertices.iter().map(|&v| v + alpha).collect();
        hull(&moved).expect("translating a valid polygon")
    }

    /// Multiplication by a nonzero complex scalar (rotation plus
    /// scaling).
    pub fn scale(&self, alpha: Complex64) -> Polygon {
        assert!(alpha.norm() > 0.0, "scale factor must be nonzero");
        let moved: Vec<Complex64> = self.vertices.iter().map(|&v| v * alpha).collect();
        hull(&moved).expect("scaling a valid polygon")
    }
}

fn cross(o: Complex64, a: Complex64, b: Complex64) -> f64 {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

fn dist_segment(z: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (z - a).norm();
    }
    let t = ((z.re - a.re) * ab.re + (z.im - a.im) * ab.im) / len2;
    let t = t.clamp(0.0, 1.0);
    let p = a + ab * Complex64::new(t, 0.0);
    (z - p).norm()
}

/// Minimal convex polygon containing all input points (monotone chain),
/// canonicalized: counterclockwise, lowest-then-leftmost vertex first,
/// collinear points within `1e-12 · scale` of an edge dropped. Coincident
/// inputs collapse to a point, collinear inputs to a segment.
pub fn hull(points: &[Complex64]) -> Result<Polygon> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let scale = points
        .iter()
        .map(|z| z.re.abs().max(z.im.abs()))
        .fold(1.0, f64::max);
    let col_tol = tol::HULL_COLLINEAR_TOL * scale;

    let mut pts: Vec<Complex64> = points.to_vec();
    pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    pts.dedup_by(|a, b| a.re == b.re && a.im == b.im);

    let ring = if pts.len() == 1 {
        pts
    } else {
        let mut lower: Vec<Complex64> = Vec::with_capacity(pts.len());
        for &p in &pts {
            while lower.len() >= 2
                && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0
            {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<Complex64> = Vec::with_capacity(pts.len());
        for &p in pts.iter().rev() {
            while upper.len() >= 2
                && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0
            {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        lower
    };

    Ok(canonicalize(ring, col_tol))
}

fn canonicalize(mut ring: Vec<Complex64>, col_tol: f64) -> Polygon {
    // drop vertices within tolerance of the chord between their
    // neighbours; iterate to a fixed point
    loop {
        if ring.len() <= 2 {
            break;
        }
        let n = ring.len();
        let mut dropped = false;
        for i in 0..n {
            let prev = ring[(i + n - 1) % n];
            let next = ring[(i + 1) % n];
            if dist_segment(ring[i], prev, next) <= col_tol {
                ring.remove(i);
                dropped = true;
                break;
            }
        }
        if !dropped {
            break;
        }
    }
    if ring.len() == 2 && (ring[1] - ring[0]).norm() <= col_tol {
        ring.pop();
    }
    // lowest-then-leftmost first
    if ring.len() >= 2 {
        let start = ring
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| a.im.total_cmp(&b.im).then(a.re.total_cmp(&b.re)))
            .map(|(i, _)| i)
            .unwrap_or(0);
        ring.rotate_left(start);
    }
    Polygon { vertices: ring }
}

/// Signed distance from `z` to the polygon: negative inside, zero on the
/// boundary, positive outside. Degenerate forms use plain set distance.
pub fn signed_distance(p: &Polygon, z: Complex64) -> f64 {
    let v = &p.vertices;
    match v.len() {
        1 => (z - v[0]).norm(),
        2 => dist_segment(z, v[0], v[1]),
        n => {
            let inside = (0..n).all(|i| cross(v[i], v[(i + 1) % n], z) >= 0.0);
            let d = (0..n)
                .map(|i| dist_segment(z, v[i], v[(i + 1) % n]))
                .fold(f64::INFINITY, f64::min);
            if inside {
                -d
            } else {
                d
            }
        }
    }
}

/// True iff `z` lies within signed distance `tol` of the region
/// (interior, boundary, or the `tol`-collar outside it).
pub fn contains(p: &Polygon, z: Complex64, tol: f64) -> bool {
    signed_distance(p, z) <= tol
}

/// Distance from a point to the region as a set: zero inside.
fn set_distance(p: &Polygon, z: Complex64) -> f64 {
    signed_distance(p, z).max(0.0)
}

/// Symmetric Hausdorff distance between two convex regions. The distance
/// from a convex set to a point of the other is maximized at a vertex,
/// so vertex-to-set distances in both directions are exact here.
pub fn hausdorff(p: &Polygon, q: &Polygon) -> f64 {
    let one = p
        .vertices
        .iter()
        .map(|&v| set_distance(q, v))
        .fold(0.0, f64::max);
    let two = q
        .vertices
        .iter()
        .map(|&v| set_distance(p, v))
        .fold(0.0, f64::max);
    one.max(two)
}

/// Boundary of the classical field of values by supporting-line sweep
/// over `n_angles` uniformly spaced directions.
///
/// Near-ties in the extreme eigenvalue (gap below `1e-10 · ||A||_F`)
/// contribute both extremal eigenvectors, which captures the endpoints
/// of flat boundary facets.
pub fn fov_boundary(a: &ComplexMatrix, n_angles: usize) -> Result<Polygon> {
    assert!(n_angles >= 3, "need at least 3 sweep angles");
    let n = a.dim();
    let scale = a.frobenius_norm();
    let mut points: Vec<Complex64> = Vec::with_capacity(2 * n_angles);
    for k in 0..n_angles {
        let theta = TAU * (k as f64) / (n_angles as f64);
        let rot = Complex64::from_polar(1.0, theta);
        let swept = hermitian_part(&a.scale(rot));
        let (w, vecs) = swept
            .array()
            .eigh(UPLO::Lower)
            .map_err(|e| Error::backend("eigh", e))?;
        let top = vecs.column(n - 1).to_owned();
        points.push(rayleigh_value(a, &top));
        if n >= 2 && w[n - 1] - w[n - 2] < tol::SWEEP_TIE_TOL * scale {
            let second = vecs.column(n - 2).to_owned();
            points.push(rayleigh_value(a, &second));
        }
    }
    hull(&points)
}

fn rayleigh_value(a: &ComplexMatrix, x: &Vector) -> Complex64 {
    let nx2 = vec_norm(x).powi(2);
    dot(x, &a.matvec(x)) / nx2
}

/// Boundary of the Givens field `F_H(A) = F(C A C⁻¹)` where `H = C*C` is
/// carried by the metric. The congruence uses the stored triangular
/// factor, never an explicit inverse of `H`.
pub fn givens_fov_boundary(a: &ComplexMatrix, m: &Metric, n_angles: usize) -> Result<Polygon> {
    if a.dim() != m.dim() {
        return Err(Error::DimensionMismatch(format!(
            "matrix of dimension {} against metric of dimension {}",
            a.dim(),
            m.dim()
        )));
    }
    let t = m.factor().matmul(a);
    let b = solve_upper_right(&t, m.factor());
    fov_boundary(&b, n_angles)
}
