//! Homogeneous 2-D primitives: points, lines, conics, the cross-ratio, and
//! the polar constructions every other module consumes.
//!
//! All types are plain value types defined up to nonzero scale. Comparisons
//! go through [`crate::tol::canonical`] so that "equal up to scale" is a
//! plain vector comparison.

use nalgebra::{Matrix3, Vector2, Vector3};
use thiserror::Error;

use crate::tol::{canonical, same_up_to_scale, DEFAULT_TOL, DEGENERACY_TOL, INFINITY_TOL};

/// Errors raised by the projective primitives.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("points coincide up to scale; no unique joining line")]
    CoincidentPoints,
    #[error("lines coincide up to scale; no unique intersection point")]
    CoincidentLines,
    #[error("input points are not collinear within tolerance (residual {residual:.3e})")]
    NonCollinear { residual: f64 },
    #[error("cross-ratio denominator vanishes: a point coincides with its own intersection")]
    ZeroDenominator,
    #[error("conic is rank-deficient; polar constructions are undefined")]
    DegenerateConic,
    #[error("operation requires a finite point, got a point at infinity")]
    PointAtInfinity,
    #[error("operation requires a finite line, got the line at infinity")]
    LineAtInfinity,
}

/// Homogeneous 2-D point: a 3-vector defined up to nonzero scale.
///
/// Points with third coordinate 0 are points at infinity and are valid
/// everywhere except where an operation explicitly requires a finite point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomPoint {
    coords: Vector3<f64>,
}

impl HomPoint {
    pub fn new(x: f64, y: f64, w: f64) -> Self {
        Self { coords: Vector3::new(x, y, w) }
    }

    /// Finite point at pixel coordinates `(x, y)`.
    pub fn finite(x: f64, y: f64) -> Self {
        Self::new(x, y, 1.0)
    }

    /// Point at infinity in direction `(dx, dy)`.
    pub fn at_infinity(dx: f64, dy: f64) -> Self {
        Self::new(dx, dy, 0.0)
    }

    pub fn from_vector(v: Vector3<f64>) -> Self {
        Self { coords: v }
    }

    pub fn coords(&self) -> &Vector3<f64> {
        &self.coords
    }

    /// Unit-norm representative with canonical sign.
    pub fn canonical(&self) -> Vector3<f64> {
        canonical(&self.coords)
    }

    /// Whether the point is finite (third coordinate above noise level).
    pub fn is_finite(&self) -> bool {
        self.coords[2].abs() > INFINITY_TOL * self.coords.norm()
    }

    /// Euclidean coordinates; `None` for points at infinity.
    pub fn to_euclidean(&self) -> Option<Vector2<f64>> {
        if self.is_finite() {
            Some(Vector2::new(self.coords[0] / self.coords[2], self.coords[1] / self.coords[2]))
        } else {
            None
        }
    }

    /// Equality up to scale within `tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        same_up_to_scale(&self.coords, &other.coords, tol)
    }
}

/// Homogeneous 2-D line `ax + by + cw = 0`, defined up to nonzero scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomLine {
    coeffs: Vector3<f64>,
}

impl HomLine {
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        Self { coeffs: Vector3::new(a, b, c) }
    }

    pub fn from_vector(v: Vector3<f64>) -> Self {
        Self { coeffs: v }
    }

    /// The line at infinity `w = 0`.
    pub fn at_infinity() -> Self {
        Self::new(0.0, 0.0, 1.0)
    }

    pub fn coeffs(&self) -> &Vector3<f64> {
        &self.coeffs
    }

    pub fn canonical(&self) -> Vector3<f64> {
        canonical(&self.coeffs)
    }

    /// Whether this is a finite image line (not the line at infinity).
    pub fn is_finite(&self) -> bool {
        let n = self.coeffs.norm();
        (self.coeffs[0].hypot(self.coeffs[1])) > INFINITY_TOL * n
    }

    /// Unit direction vector of a finite line.
    pub fn direction(&self) -> Option<Vector2<f64>> {
        if !self.is_finite() {
            return None;
        }
        let d = Vector2::new(-self.coeffs[1], self.coeffs[0]);
        Some(d / d.norm())
    }

    /// Unit normal of a finite line.
    pub fn normal(&self) -> Option<Vector2<f64>> {
        if !self.is_finite() {
            return None;
        }
        let n = Vector2::new(self.coeffs[0], self.coeffs[1]);
        Some(n / n.norm())
    }

    /// Signed Euclidean distance from a finite point to a finite line.
    /// Positive on the side the unit normal points into.
    pub fn signed_distance(&self, p: &HomPoint) -> Option<f64> {
        let e = p.to_euclidean()?;
        let n = Vector2::new(self.coeffs[0], self.coeffs[1]).norm();
        if n == 0.0 {
            return None;
        }
        Some((self.coeffs[0] * e[0] + self.coeffs[1] * e[1] + self.coeffs[2]) / n)
    }

    /// Incidence residual `|l·p|` after canonical normalization of both sides.
    pub fn incidence_residual(&self, p: &HomPoint) -> f64 {
        self.canonical().dot(&p.canonical()).abs()
    }

    /// The point at infinity lying on this (finite) line.
    pub fn point_at_infinity(&self) -> Option<HomPoint> {
        self.direction().map(|d| HomPoint::at_infinity(d[0], d[1]))
    }

    /// Finite point of the line closest to the coordinate origin.
    pub fn base_point(&self) -> Option<Vector2<f64>> {
        if !self.is_finite() {
            return None;
        }
        let (a, b, c) = (self.coeffs[0], self.coeffs[1], self.coeffs[2]);
        let n2 = a * a + b * b;
        Some(Vector2::new(-a * c / n2, -b * c / n2))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        same_up_to_scale(&self.coeffs, &other.coeffs, tol)
    }
}

/// Symmetric 3×3 conic, stored as the six independent entries so symmetry
/// is unviolable. For coefficients `(a, b, c, d, e, f)` the matrix is
///
/// ```text
/// | a b d |
/// | b c e |
/// | d e f |
/// ```
///
/// i.e. the point conic `a x² + 2b xy + c y² + 2d xw + 2e yw + f w² = 0`.
#[derive(Debug, Clone, Copy)]
pub struct Conic {
    coeffs: [f64; 6],
}

impl Conic {
    pub fn new(a: f64, b: f64, c: f64, d: f64, e: f64, f: f64) -> Self {
        Self { coeffs: [a, b, c, d, e, f] }
    }

    /// Builds a conic from a symmetric matrix. Off-diagonal entries are
    /// averaged, so tiny asymmetries from accumulated round-off are folded
    /// away rather than stored.
    pub fn from_matrix(m: &Matrix3<f64>) -> Self {
        Self::new(
            m[(0, 0)],
            0.5 * (m[(0, 1)] + m[(1, 0)]),
            m[(1, 1)],
            0.5 * (m[(0, 2)] + m[(2, 0)]),
            0.5 * (m[(1, 2)] + m[(2, 1)]),
            m[(2, 2)],
        )
    }

    /// Circle with centre `(cx, cy)` and radius `r > 0`.
    pub fn circle(cx: f64, cy: f64, r: f64) -> Self {
        Self::new(1.0, 0.0, 1.0, -cx, -cy, cx * cx + cy * cy - r * r)
    }

    pub fn matrix(&self) -> Matrix3<f64> {
        let [a, b, c, d, e, f] = self.coeffs;
        Matrix3::new(a, b, d, b, c, e, d, e, f)
    }

    /// Quadratic form `xᵀ C x`.
    pub fn quad_form(&self, p: &HomPoint) -> f64 {
        let x = p.coords();
        let [a, b, c, d, e, f] = self.coeffs;
        a * x[0] * x[0]
            + c * x[1] * x[1]
            + f * x[2] * x[2]
            + 2.0 * (b * x[0] * x[1] + d * x[0] * x[2] + e * x[1] * x[2])
    }

    /// Unit-Frobenius representative with canonical sign.
    pub fn normalized(&self) -> Matrix3<f64> {
        let m = self.matrix();
        let n = m.norm();
        if n == 0.0 {
            return m;
        }
        let m = m / n;
        // canonical sign: first significant entry of the upper triangle positive
        for &v in &[m[(0, 0)], m[(0, 1)], m[(1, 1)], m[(0, 2)], m[(1, 2)], m[(2, 2)]] {
            if v.abs() > 1e-14 {
                return if v < 0.0 { -m } else { m };
            }
        }
        m
    }

    /// Eigenvalue signature `(n_pos, n_neg, n_zero)` of the scale-normalized
    /// matrix, with eigenvalues below `tol` counted as zero.
    pub fn signature(&self, tol: f64) -> (usize, usize, usize) {
        let eig = nalgebra::SymmetricEigen::new(self.normalized());
        let (mut pos, mut neg, mut zero) = (0, 0, 0);
        for &l in eig.eigenvalues.iter() {
            if l.abs() <= tol {
                zero += 1;
            } else if l > 0.0 {
                pos += 1;
            } else {
                neg += 1;
            }
        }
        (pos, neg, zero)
    }

    /// Whether the conic matrix has full rank.
    pub fn is_nondegenerate(&self) -> bool {
        self.normalized().determinant().abs() > DEGENERACY_TOL
    }
}

/// Line through two distinct points.
pub fn join(p: &HomPoint, q: &HomPoint) -> Result<HomLine, GeometryError> {
    let l = p.canonical().cross(&q.canonical());
    if l.norm() <= DEGENERACY_TOL {
        return Err(GeometryError::CoincidentPoints);
    }
    Ok(HomLine::from_vector(l))
}

/// Intersection point of two distinct lines.
pub fn meet(l: &HomLine, m: &HomLine) -> Result<HomPoint, GeometryError> {
    let p = l.canonical().cross(&m.canonical());
    if p.norm() <= DEGENERACY_TOL {
        return Err(GeometryError::CoincidentLines);
    }
    Ok(HomPoint::from_vector(p))
}

/// Cross-ratio of four collinear points, in the arrangement used by the
/// angle construction: for `(x₁, x₂, x₁′, x₂′)` the value is
///
/// ```text
/// (|x₂x₁′| · |x₁x₂′|) / (|x₁x₁′| · |x₂x₂′|)
/// ```
///
/// `value` is the unsigned ratio; `deltas` exposes the four signed gaps
/// (numerators first) measured along the common line, so callers can run
/// side-of-line tests. Points at infinity are handled through homogeneous
/// line parameters, where each gap becomes the sine of a parameter angle.
#[derive(Debug, Clone, Copy)]
pub struct CrossRatio {
    /// Unsigned ratio `(|bc|·|ad|) / (|ac|·|bd|)` for inputs `(a, b, c, d)`.
    pub value: f64,
    /// Signed gaps `[δ(b,c), δ(a,d), δ(a,c), δ(b,d)]` along the line.
    pub deltas: [f64; 4],
}

impl CrossRatio {
    /// Ratio with signs retained: `(δ(b,c)·δ(a,d)) / (δ(a,c)·δ(b,d))`.
    pub fn signed_value(&self) -> f64 {
        (self.deltas[0] * self.deltas[1]) / (self.deltas[2] * self.deltas[3])
    }
}

pub fn cross_ratio(
    a: &HomPoint,
    b: &HomPoint,
    c: &HomPoint,
    d: &HomPoint,
) -> Result<CrossRatio, GeometryError> {
    cross_ratio_with_tol(a, b, c, d, DEFAULT_TOL)
}

/// [`cross_ratio`] with an explicit collinearity tolerance.
pub fn cross_ratio_with_tol(
    a: &HomPoint,
    b: &HomPoint,
    c: &HomPoint,
    d: &HomPoint,
    tol: f64,
) -> Result<CrossRatio, GeometryError> {
    let pts = [a, b, c, d];

    // Common line from the best-separated pair, for conditioning.
    let mut line: Option<(Vector3<f64>, f64)> = None;
    for i in 0..4 {
        for j in (i + 1)..4 {
            let l = pts[i].canonical().cross(&pts[j].canonical());
            let n = l.norm();
            if line.map_or(true, |(_, best)| n > best) {
                line = Some((l, n));
            }
        }
    }
    let (l, sep) = line.unwrap();
    if sep <= DEGENERACY_TOL {
        return Err(GeometryError::CoincidentPoints);
    }
    let l = HomLine::from_vector(l);

    let mut worst = 0.0_f64;
    for p in &pts {
        worst = worst.max(l.incidence_residual(p));
    }
    if worst > tol {
        return Err(GeometryError::NonCollinear { residual: worst });
    }

    // Homogeneous parameter (λ, μ) of each point along the line: finite
    // points give (signed distance from base, 1), infinite points (±1, 0).
    let u = l.direction().ok_or(GeometryError::LineAtInfinity)?;
    let p0 = l.base_point().ok_or(GeometryError::LineAtInfinity)?;
    let params: Vec<Vector2<f64>> = pts
        .iter()
        .map(|p| {
            let par = match p.to_euclidean() {
                Some(e) => Vector2::new((e - p0).dot(&u), 1.0),
                None => Vector2::new(p.coords()[0] * u[0] + p.coords()[1] * u[1], 0.0),
            };
            par / par.norm()
        })
        .collect();

    let delta = |i: usize, j: usize| params[i][0] * params[j][1] - params[j][0] * params[i][1];
    let deltas = [delta(1, 2), delta(0, 3), delta(0, 2), delta(1, 3)];
    let den = deltas[2] * deltas[3];
    if den.abs() <= DEGENERACY_TOL {
        return Err(GeometryError::ZeroDenominator);
    }
    Ok(CrossRatio { value: ((deltas[0] * deltas[1]) / den).abs(), deltas })
}

/// Polar line of a point with respect to a non-degenerate conic.
pub fn polar(x: &HomPoint, c: &Conic) -> Result<HomLine, GeometryError> {
    if !c.is_nondegenerate() {
        return Err(GeometryError::DegenerateConic);
    }
    Ok(HomLine::from_vector(c.matrix() * x.coords()))
}

/// Pole of a line with respect to a non-degenerate conic (inverse of
/// [`polar`]: `pole(polar(x)) ≃ x`).
pub fn pole(l: &HomLine, c: &Conic) -> Result<HomPoint, GeometryError> {
    let inv = c.normalized().try_inverse().ok_or(GeometryError::DegenerateConic)?;
    Ok(HomPoint::from_vector(inv * l.canonical()))
}

/// Real intersection points of a non-degenerate conic with a line: zero,
/// one (tangency), or two points. An empty result is valid — the line
/// misses the real part of the conic.
pub fn conic_line_intersections(c: &Conic, l: &HomLine) -> Result<Vec<HomPoint>, GeometryError> {
    if !c.is_nondegenerate() {
        return Err(GeometryError::DegenerateConic);
    }
    let m = c.normalized();

    // Span the line by two unit points: its point at infinity q and the
    // base point p. For the line at infinity use two fixed infinite points.
    let (p, q) = if l.is_finite() {
        let b = l.base_point().unwrap();
        let p = Vector3::new(b[0], b[1], 1.0);
        let d = l.direction().unwrap();
        (p / p.norm(), Vector3::new(d[0], d[1], 0.0))
    } else {
        (Vector3::new(1.0, 0.0, 0.0), Vector3::new(0.0, 1.0, 0.0))
    };

    // x(λ, μ) = λ q + μ p on the conic: a2 λ² + 2 b2 λμ + c2 μ² = 0.
    let a2 = (q.transpose() * m * q)[0];
    let b2 = (q.transpose() * m * p)[0];
    let c2 = (p.transpose() * m * p)[0];
    let disc = b2 * b2 - a2 * c2;

    const EPS: f64 = 1e-12;
    let point = |lam: f64, mu: f64| HomPoint::from_vector(lam * q + mu * p);

    if a2.abs() <= EPS && b2.abs() <= EPS && c2.abs() <= EPS {
        // line lies on the conic; only possible for degenerate conics
        return Err(GeometryError::DegenerateConic);
    }
    if disc < -EPS {
        return Ok(vec![]);
    }
    if disc.abs() <= EPS {
        // tangency: double root
        if a2.abs() >= c2.abs() {
            return Ok(vec![point(-b2, a2)]);
        }
        return Ok(vec![point(c2, -b2)]);
    }
    let s = disc.sqrt();
    if a2.abs() <= EPS {
        // one intersection at the line's point at infinity
        return Ok(vec![point(1.0, 0.0), point(-c2, 2.0 * b2)]);
    }
    // stable quadratic roots: avoid cancellation in -b ± √disc
    let qq = -(b2 + b2.signum() * s);
    Ok(vec![point(qq, a2), point(c2, qq)])
}

/// Euclidean foot of the perpendicular from a finite point to a finite line.
pub fn foot_of_perpendicular(p: &HomPoint, l: &HomLine) -> Result<HomPoint, GeometryError> {
    let perp = perpendicular_through(p, l)?;
    meet(l, &perp).map_err(|_| GeometryError::CoincidentLines)
}

/// Line through a finite point perpendicular (in the pixel metric) to a
/// finite line.
pub fn perpendicular_through(p: &HomPoint, l: &HomLine) -> Result<HomLine, GeometryError> {
    let e = p.to_euclidean().ok_or(GeometryError::PointAtInfinity)?;
    if !l.is_finite() {
        return Err(GeometryError::LineAtInfinity);
    }
    let lc = l.canonical();
    let (a, b) = (lc[0], lc[1]);
    // normal of the perpendicular is the direction of l
    Ok(HomLine::new(-b, a, b * e[0] - a * e[1]))
}

/// Euclidean distance between two finite points.
pub fn distance(p: &HomPoint, q: &HomPoint) -> Result<f64, GeometryError> {
    let (pe, qe) = (
        p.to_euclidean().ok_or(GeometryError::PointAtInfinity)?,
        q.to_euclidean().ok_or(GeometryError::PointAtInfinity)?,
    );
    Ok((pe - qe).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn rand_point(rng: &mut ChaCha8Rng) -> HomPoint {
        HomPoint::finite(rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0))
    }

    #[test]
    fn join_axis_points() {
        let l = join(&HomPoint::finite(0.0, 0.0), &HomPoint::finite(1.0, 0.0)).unwrap();
        assert!(l.approx_eq(&HomLine::new(0.0, 1.0, 0.0), 1e-12));
    }

    #[test]
    fn join_of_two_infinite_points_is_line_at_infinity() {
        let l = join(&HomPoint::at_infinity(1.0, 0.0), &HomPoint::at_infinity(0.0, 1.0)).unwrap();
        assert!(l.approx_eq(&HomLine::at_infinity(), 1e-12));
    }

    #[test]
    fn join_coincident_points_errors() {
        let p = HomPoint::finite(1.0, 2.0);
        let q = HomPoint::new(2.0, 4.0, 2.0);
        assert_eq!(join(&p, &q), Err(GeometryError::CoincidentPoints));
    }

    #[test]
    fn meet_axes() {
        let y0 = HomLine::new(0.0, 1.0, 0.0);
        let x0 = HomLine::new(1.0, 0.0, 0.0);
        let p = meet(&y0, &x0).unwrap();
        assert!(p.approx_eq(&HomPoint::finite(0.0, 0.0), 1e-12));
    }

    #[test]
    fn meet_parallel_lines_at_infinity() {
        let a = HomLine::new(0.0, 1.0, 0.0); // y = 0
        let b = HomLine::new(0.0, 1.0, -1.0); // y = 1
        let p = meet(&a, &b).unwrap();
        assert!(p.approx_eq(&HomPoint::at_infinity(1.0, 0.0), 1e-12));
    }

    #[test]
    fn join_meet_incidence_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let (p, q) = (rand_point(&mut rng), rand_point(&mut rng));
            let l = join(&p, &q).unwrap();
            assert!(l.incidence_residual(&p) < 1e-12);
            assert!(l.incidence_residual(&q) < 1e-12);
        }
    }

    #[test]
    fn join_meet_duality() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let (p, q, r) = (rand_point(&mut rng), rand_point(&mut rng), rand_point(&mut rng));
            let (lq, lr) = (join(&p, &q).unwrap(), join(&p, &r).unwrap());
            if lq.approx_eq(&lr, 1e-9) {
                continue; // collinear sample
            }
            let back = meet(&lq, &lr).unwrap();
            assert!(back.approx_eq(&p, 1e-9));
        }
    }

    #[test]
    fn cross_ratio_parameter_example() {
        // points at parameters 0, 1, 2, 3 on the x-axis
        let p = |t: f64| HomPoint::finite(t, 0.0);
        let cr = cross_ratio(&p(0.0), &p(1.0), &p(2.0), &p(3.0)).unwrap();
        assert_relative_eq!(cr.value, 0.75, max_relative = 1e-12);
    }

    #[test]
    fn cross_ratio_zero_numerator() {
        // b = c: the zero-numerator pattern that encodes a right angle
        let p = |t: f64| HomPoint::finite(t, 1.0);
        let cr = cross_ratio(&p(0.0), &p(2.0), &p(2.0), &p(5.0)).unwrap();
        assert_eq!(cr.value, 0.0);
    }

    #[test]
    fn cross_ratio_non_collinear_rejected() {
        let r = cross_ratio(
            &HomPoint::finite(0.0, 0.0),
            &HomPoint::finite(1.0, 0.0),
            &HomPoint::finite(2.0, 1.0),
            &HomPoint::finite(3.0, 0.0),
        );
        assert!(matches!(r, Err(GeometryError::NonCollinear { .. })));
    }

    #[test]
    fn cross_ratio_projective_invariance() {
        // the value is invariant under any projective reparameterization of
        // the line: push parameters through a random 2×2 homography
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let mut ts = [0.0_f64; 4];
            loop {
                for t in ts.iter_mut() {
                    *t = rng.random_range(-5.0..5.0);
                }
                let sep = (0..4).all(|i| (0..4).all(|j| i == j || (ts[i] - ts[j]).abs() > 1e-3));
                if sep {
                    break;
                }
            }
            let (m00, m01, m10, m11): (f64, f64, f64, f64) = (
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
            );
            if (m00 * m11 - m01 * m10).abs() < 0.1 {
                continue;
            }
            let dir = Vector2::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            if dir.norm() < 0.1 {
                continue;
            }
            let base = Vector2::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
            let pt = |t: f64| HomPoint::finite(base[0] + t * dir[0], base[1] + t * dir[1]);
            let mapped = |t: f64| {
                let (num, den) = (m00 * t + m01, m10 * t + m11);
                (num, den)
            };

            let a = cross_ratio(&pt(ts[0]), &pt(ts[1]), &pt(ts[2]), &pt(ts[3])).unwrap();
            let ms: Vec<HomPoint> = ts
                .iter()
                .map(|&t| {
                    let (num, den) = mapped(t);
                    if den.abs() < 1e-9 {
                        HomPoint::at_infinity(dir[0], dir[1])
                    } else {
                        pt(num / den)
                    }
                })
                .collect();
            let b = match cross_ratio(&ms[0], &ms[1], &ms[2], &ms[3]) {
                Ok(cr) => cr,
                Err(GeometryError::ZeroDenominator) => continue,
                Err(e) => panic!("unexpected error {e:?}"),
            };
            assert_relative_eq!(a.value, b.value, max_relative = 1e-7, epsilon = 1e-9);
        }
    }

    #[test]
    fn polar_of_circle_point() {
        let circle = Conic::circle(0.0, 0.0, 1.0);
        let l = polar(&HomPoint::finite(2.0, 0.0), &circle).unwrap();
        // x = 1/2, i.e. coefficients (2, 0, -1)
        assert!(l.approx_eq(&HomLine::new(2.0, 0.0, -1.0), 1e-12));
    }

    #[test]
    fn polar_of_centre_is_line_at_infinity() {
        let circle = Conic::circle(0.0, 0.0, 1.0);
        let l = polar(&HomPoint::finite(0.0, 0.0), &circle).unwrap();
        assert!(l.approx_eq(&HomLine::at_infinity(), 1e-12));
    }

    #[test]
    fn polar_symmetry_and_pole_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..200 {
            // random non-degenerate symmetric conic
            let c = loop {
                let v: Vec<f64> = (0..6).map(|_| rng.random_range(-2.0..2.0)).collect();
                let c = Conic::new(v[0], v[1], v[2], v[3], v[4], v[5]);
                if c.is_nondegenerate() {
                    break c;
                }
            };
            let (x, y) = (rand_point(&mut rng), rand_point(&mut rng));
            // y on polar(x) iff x on polar(y): xᵀCy symmetric by storage
            let lx = polar(&x, &c).unwrap();
            let ly = polar(&y, &c).unwrap();
            let a = lx.coeffs().dot(y.coords());
            let b = ly.coeffs().dot(x.coords());
            assert_relative_eq!(a, b, max_relative = 1e-9, epsilon = 1e-12);
            // pole inverts polar
            let back = pole(&lx, &c).unwrap();
            assert!(back.approx_eq(&x, 1e-9));
        }
    }

    #[test]
    fn polar_degenerate_conic_rejected() {
        // rank-2 conic: pair of lines x² - y² = 0
        let c = Conic::new(1.0, 0.0, -1.0, 0.0, 0.0, 0.0);
        assert_eq!(polar(&HomPoint::finite(1.0, 1.0), &c), Err(GeometryError::DegenerateConic));
    }

    #[test]
    fn conic_line_intersections_cases() {
        let circle = Conic::circle(0.0, 0.0, 1.0);
        // secant
        let two = conic_line_intersections(&circle, &HomLine::new(0.0, 1.0, 0.0)).unwrap();
        assert_eq!(two.len(), 2);
        for p in &two {
            let e = p.to_euclidean().unwrap();
            assert_relative_eq!(e[0].abs(), 1.0, max_relative = 1e-12);
            assert_relative_eq!(e[1], 0.0, epsilon = 1e-12);
        }
        // miss
        let none = conic_line_intersections(&circle, &HomLine::new(0.0, 1.0, -2.0)).unwrap();
        assert!(none.is_empty());
        // tangent
        let one = conic_line_intersections(&circle, &HomLine::new(0.0, 1.0, -1.0)).unwrap();
        assert_eq!(one.len(), 1);
        assert!(one[0].approx_eq(&HomPoint::finite(0.0, 1.0), 1e-9));
    }

    #[test]
    fn conic_line_intersections_satisfy_both_equations() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let cx = rng.random_range(-5.0..5.0);
            let cy = rng.random_range(-5.0..5.0);
            let r = rng.random_range(0.5..4.0);
            let c = Conic::circle(cx, cy, r);
            let l = join(&rand_point(&mut rng), &rand_point(&mut rng)).unwrap();
            for p in conic_line_intersections(&c, &l).unwrap() {
                let x = p.canonical();
                let v = (x.transpose() * c.normalized() * x)[0].abs();
                assert!(v < 1e-9, "conic residual {v}");
                assert!(l.incidence_residual(&p) < 1e-9);
            }
        }
    }

    #[test]
    fn foot_of_perpendicular_basic() {
        let foot =
            foot_of_perpendicular(&HomPoint::finite(0.0, 0.0), &HomLine::new(0.0, 1.0, -2.0))
                .unwrap();
        assert!(foot.approx_eq(&HomPoint::finite(0.0, 2.0), 1e-12));
    }

    #[test]
    fn foot_is_idempotent_for_incident_point() {
        let l = HomLine::new(1.0, 1.0, -2.0);
        let p = HomPoint::finite(1.0, 1.0);
        let foot = foot_of_perpendicular(&p, &l).unwrap();
        assert!(foot.approx_eq(&p, 1e-12));
    }

    #[test]
    fn foot_rejects_point_at_infinity() {
        let r = foot_of_perpendicular(&HomPoint::at_infinity(1.0, 0.0), &HomLine::new(0.0, 1.0, -2.0));
        assert_eq!(r, Err(GeometryError::PointAtInfinity));
    }

    #[test]
    fn foot_minimizes_distance() {
        // 1-D minimization oracle: the foot beats a dense parameter sweep
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..50 {
            let p = rand_point(&mut rng);
            let l = join(&rand_point(&mut rng), &rand_point(&mut rng)).unwrap();
            let foot = foot_of_perpendicular(&p, &l).unwrap();
            let best = distance(&p, &foot).unwrap();
            let base = l.base_point().unwrap();
            let dir = l.direction().unwrap();
            for k in -400..=400 {
                let t = k as f64 * 0.05;
                let q = HomPoint::finite(base[0] + t * dir[0], base[1] + t * dir[1]);
                assert!(distance(&p, &q).unwrap() + 1e-12 >= best);
            }
        }
    }
}
