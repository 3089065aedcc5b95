//! Tolerance policy and scale-free comparisons for homogeneous quantities.

use nalgebra::Vector3;

/// Module-wide relative tolerance for algebraic identities on
/// double-precision synthetic data. User-facing operations accept an
/// override where noise makes this too strict.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Hard floor below which homogeneous constructions (join of nearly equal
/// points, meet of nearly equal lines) are treated as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// Relative threshold classifying a homogeneous point as lying at infinity.
pub const INFINITY_TOL: f64 = 1e-12;

/// Unit-norm representative with a canonical sign: the first coordinate
/// whose magnitude is above noise level is made positive. Makes "equal up
/// to scale" a plain vector comparison.
pub fn canonical(v: &Vector3<f64>) -> Vector3<f64> {
    let n = v.norm();
    if n == 0.0 {
        return *v;
    }
    let u = v / n;
    for i in 0..3 {
        if u[i].abs() > 1e-14 {
            return if u[i] < 0.0 { -u } else { u };
        }
    }
    u
}

/// True when `a` and `b` represent the same projective element within `tol`.
///
/// Measured as the sine of the angle between the homogeneous vectors, so the
/// test is independent of the scale of either input.
pub fn same_up_to_scale(a: &Vector3<f64>, b: &Vector3<f64>, tol: f64) -> bool {
    let (na, nb) = (a.norm(), b.norm());
    if na == 0.0 || nb == 0.0 {
        return false;
    }
    a.cross(b).norm() / (na * nb) <= tol && a.dot(b).abs() > 0.0
}
