//! Calibration matrix, image of the absolute conic, calibrating conic, and
//! the two angle formulas (algebraic and cross-ratio), plus calibration from
//! three orthogonal vanishing points.
//!
//! The calibrating conic of a camera with calibration matrix `K` is
//! `C = K⁻ᵀ·diag(1,1,-1)·K⁻¹`: the image of all rays at 45° from the optical
//! axis. It factors as `ω·S` where `ω = (KKᵀ)⁻¹` is the IAC and
//! `S = K·diag(1,1,-1)·K⁻¹` reflects points through the conic centre, which
//! is what makes the reflected-polar construction work.

use nalgebra::{Matrix3, Vector2};
use thiserror::Error;

use crate::projective::{
    foot_of_perpendicular, join, meet, perpendicular_through, Conic, CrossRatio, GeometryError,
    HomLine, HomPoint,
};
use crate::projective::cross_ratio as projective_cross_ratio;
use crate::tol::DEFAULT_TOL;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CalibrationError {
    #[error("focal lengths must be positive and finite (fx={fx}, fy={fy})")]
    InvalidFocal { fx: f64, fy: f64 },
    #[error("conic does not have the calibrating-conic signature (+,+,-)")]
    WrongSignature,
    #[error("vanishing points are collinear; the orthocentre is undefined")]
    CollinearVanishingPoints,
    #[error("vanishing point at infinity: a direction is parallel to the image plane")]
    VanishingPointAtInfinity,
    #[error(
        "vanishing-point triangle is not acute (r² = {r_squared:.6e}); \
         inconsistent orthogonal triple or principal point outside the triangle"
    )]
    NonAcuteTriangle { r_squared: f64 },
    #[error("coincident input points")]
    CoincidentPoints,
    #[error("internal consistency violated: a point lies on its own reflected polar")]
    Internal,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Upper-triangular camera calibration matrix
///
/// ```text
/// | fx  s  px |
/// |  0 fy  py |
/// |  0  0   1 |
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CalibrationMatrix {
    fx: f64,
    fy: f64,
    skew: f64,
    px: f64,
    py: f64,
}

impl CalibrationMatrix {
    pub fn new(fx: f64, fy: f64, skew: f64, px: f64, py: f64) -> Result<Self, CalibrationError> {
        if !(fx > 0.0 && fy > 0.0 && fx.is_finite() && fy.is_finite()) {
            return Err(CalibrationError::InvalidFocal { fx, fy });
        }
        Ok(Self { fx, fy, skew, px, py })
    }

    /// Square-pixel, zero-skew camera.
    pub fn with_focal(f: f64, px: f64, py: f64) -> Result<Self, CalibrationError> {
        Self::new(f, f, 0.0, px, py)
    }

    pub fn identity() -> Self {
        Self { fx: 1.0, fy: 1.0, skew: 0.0, px: 0.0, py: 0.0 }
    }

    pub fn fx(&self) -> f64 {
        self.fx
    }

    pub fn fy(&self) -> f64 {
        self.fy
    }

    pub fn skew(&self) -> f64 {
        self.skew
    }

    pub fn principal_point(&self) -> HomPoint {
        HomPoint::finite(self.px, self.py)
    }

    pub fn principal_point_xy(&self) -> Vector2<f64> {
        Vector2::new(self.px, self.py)
    }

    pub fn matrix(&self) -> Matrix3<f64> {
        Matrix3::new(self.fx, self.skew, self.px, 0.0, self.fy, self.py, 0.0, 0.0, 1.0)
    }

    /// Closed-form inverse of the upper-triangular matrix.
    pub fn inverse_matrix(&self) -> Matrix3<f64> {
        let (fx, fy, s, px, py) = (self.fx, self.fy, self.skew, self.px, self.py);
        Matrix3::new(
            1.0 / fx,
            -s / (fx * fy),
            (s * py - fy * px) / (fx * fy),
            0.0,
            1.0 / fy,
            -py / fy,
            0.0,
            0.0,
            1.0,
        )
    }

    /// Whether pixels are square and skew-free within a relative tolerance.
    pub fn is_square_pixels(&self, rel_tol: f64) -> bool {
        let scale = self.fx.max(self.fy);
        (self.fx - self.fy).abs() <= rel_tol * scale && self.skew.abs() <= rel_tol * scale
    }

    /// Normalized direction of the back-projected ray through an image point.
    pub fn back_project(&self, x: &HomPoint) -> nalgebra::Vector3<f64> {
        let r = self.inverse_matrix() * x.coords();
        r / r.norm()
    }
}

/// Image of the absolute conic, `ω = (KKᵀ)⁻¹`. Positive definite: it
/// contains no real points, so it can only be used algebraically.
#[derive(Debug, Clone, Copy)]
pub struct IacConic {
    conic: Conic,
}

impl IacConic {
    pub fn conic(&self) -> &Conic {
        &self.conic
    }
}

/// The calibrating conic `C = K⁻ᵀ·diag(1,1,-1)·K⁻¹`, a real conic with
/// signature (+,+,-). For square pixels and zero skew it is the circle of
/// radius `fx` centred at the principal point.
#[derive(Debug, Clone, Copy)]
pub struct CalibratingConic {
    conic: Conic,
    centre: HomPoint,
}

impl CalibratingConic {
    /// Wraps a measured conic after checking its signature; the centre is
    /// recovered as the pole of the line at infinity.
    pub fn from_conic(conic: Conic) -> Result<Self, CalibrationError> {
        let sig = conic.signature(1e-12);
        if !(sig == (2, 1, 0) || sig == (1, 2, 0)) {
            return Err(CalibrationError::WrongSignature);
        }
        let centre = crate::projective::pole(&HomLine::at_infinity(), &conic)
            .map_err(|_| CalibrationError::WrongSignature)?;
        if !centre.is_finite() {
            return Err(CalibrationError::WrongSignature);
        }
        Ok(Self { conic, centre })
    }

    pub fn conic(&self) -> &Conic {
        &self.conic
    }

    pub fn centre(&self) -> &HomPoint {
        &self.centre
    }
}

/// Which formula produced an [`AngleMeasurement`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngleMethod {
    /// Quadratic forms in the IAC.
    Algebraic,
    /// Cross-ratio of the two points with their reflected-polar intersections.
    CrossRatio,
    /// Euclidean angle subtended at a conformal point.
    Conformal,
}

/// Angle between two rays, `theta ∈ [0, π]` with its cosine.
#[derive(Debug, Clone, Copy)]
pub struct AngleMeasurement {
    pub theta: f64,
    pub cos_theta: f64,
    pub method: AngleMethod,
}

impl AngleMeasurement {
    pub fn from_cos(cos_theta: f64, method: AngleMethod) -> Self {
        let c = cos_theta.clamp(-1.0, 1.0);
        Self { theta: c.acos(), cos_theta: c, method }
    }

    pub fn degrees(&self) -> f64 {
        self.theta.to_degrees()
    }
}

/// `ω = (K Kᵀ)⁻¹`, computed as `K⁻ᵀ K⁻¹`.
pub fn iac_from_k(k: &CalibrationMatrix) -> IacConic {
    let ki = k.inverse_matrix();
    IacConic { conic: Conic::from_matrix(&(ki.transpose() * ki)) }
}

/// `C = K⁻ᵀ·diag(1,1,-1)·K⁻¹`, centred at the principal point.
pub fn calibrating_conic_from_k(k: &CalibrationMatrix) -> CalibratingConic {
    let ki = k.inverse_matrix();
    let d = Matrix3::from_diagonal(&nalgebra::Vector3::new(1.0, 1.0, -1.0));
    CalibratingConic {
        conic: Conic::from_matrix(&(ki.transpose() * d * ki)),
        centre: k.principal_point(),
    }
}

/// Reads the calibration matrix back off a calibrating conic: the inverse
/// conic is `K·diag(1,1,-1)·Kᵀ` up to scale, from which the five entries
/// fall out row by row once the bottom-right entry is normalized to -1.
pub fn k_from_calibrating_conic(c: &CalibratingConic) -> Result<CalibrationMatrix, CalibrationError> {
    let sig = c.conic.signature(1e-12);
    if !(sig == (2, 1, 0) || sig == (1, 2, 0)) {
        return Err(CalibrationError::WrongSignature);
    }
    let inv = c.conic.normalized().try_inverse().ok_or(CalibrationError::WrongSignature)?;
    if inv[(2, 2)].abs() < 1e-15 {
        return Err(CalibrationError::WrongSignature);
    }
    let a = inv / (-inv[(2, 2)]);
    let px = -a[(0, 2)];
    let py = -a[(1, 2)];
    let fy2 = a[(1, 1)] + py * py;
    if fy2 <= 0.0 {
        return Err(CalibrationError::WrongSignature);
    }
    let fy = fy2.sqrt();
    let skew = (a[(0, 1)] + px * py) / fy;
    let fx2 = a[(0, 0)] + px * px - skew * skew;
    if fx2 <= 0.0 {
        return Err(CalibrationError::WrongSignature);
    }
    CalibrationMatrix::new(fx2.sqrt(), fy, skew, px, py)
}

/// Point reflection through the centre of the calibrating conic:
/// `ẋ = S·x` with `S = K·diag(1,1,-1)·K⁻¹`. Applying it twice is the
/// identity, and the principal point is the fixed point.
pub fn reflect_through_centre(x: &HomPoint, k: &CalibrationMatrix) -> HomPoint {
    let d = Matrix3::from_diagonal(&nalgebra::Vector3::new(1.0, 1.0, -1.0));
    let s = k.matrix() * d * k.inverse_matrix();
    HomPoint::from_vector(s * x.coords())
}

/// The reflected polar of `x`: the polar of `ẋ` with respect to the
/// calibrating conic, which equals `ω·x`. Every point on it is a direction
/// orthogonal to the ray through `x`.
pub fn reflected_polar(x: &HomPoint, k: &CalibrationMatrix) -> HomLine {
    HomLine::from_vector(iac_from_k(k).conic.matrix() * x.coords())
}

/// Angle between the rays through two image points, from the IAC quadratic
/// forms: `cos θ = x₁ᵀωx₂ / √(x₁ᵀωx₁)·√(x₂ᵀωx₂)`.
pub fn angle_algebraic(x1: &HomPoint, x2: &HomPoint, k: &CalibrationMatrix) -> AngleMeasurement {
    let w = iac_from_k(k).conic.matrix();
    let q = |a: &HomPoint, b: &HomPoint| (a.coords().transpose() * w * b.coords())[0];
    let cos = q(x1, x2) / (q(x1, x1).sqrt() * q(x2, x2).sqrt());
    AngleMeasurement::from_cos(cos, AngleMethod::Algebraic)
}

/// The same angle through the cross-ratio construction: intersect the line
/// `x₁×x₂` with both reflected polars, take the cross-ratio as `cos²θ`, and
/// settle the sign by whether the two points lie on the same side of `l₁`.
pub fn angle_cross_ratio(
    x1: &HomPoint,
    x2: &HomPoint,
    k: &CalibrationMatrix,
) -> Result<AngleMeasurement, CalibrationError> {
    let l1 = reflected_polar(x1, k);
    let l2 = reflected_polar(x2, k);
    let through = join(x1, x2).map_err(|_| CalibrationError::CoincidentPoints)?;
    let x1p = meet(&through, &l1).map_err(|_| CalibrationError::Internal)?;
    let x2p = meet(&through, &l2).map_err(|_| CalibrationError::Internal)?;

    let cr: CrossRatio = match projective_cross_ratio(x1, x2, &x1p, &x2p) {
        Ok(cr) => cr,
        Err(GeometryError::ZeroDenominator) => return Err(CalibrationError::Internal),
        Err(e) => return Err(e.into()),
    };
    let cos_sq = cr.value.clamp(0.0, 1.0);

    // Side-of-line test: same side of l₁ means an acute angle. Sides are
    // evaluated on affine representatives (x / |w|) so the sign is the
    // geometric one; points at infinity keep their given orientation.
    let side = |p: &HomPoint| {
        let v = p.coords().dot(l1.coeffs());
        let w = p.coords()[2];
        if w.abs() > crate::tol::INFINITY_TOL * p.coords().norm() {
            v / w.abs()
        } else {
            v
        }
    };
    let (s1, s2) = (side(x1), side(x2));
    let sign = if s2 == 0.0 {
        0.0
    } else if s1 * s2 > 0.0 {
        1.0
    } else {
        -1.0
    };
    Ok(AngleMeasurement::from_cos(sign * cos_sq.sqrt(), AngleMethod::CrossRatio))
}

/// Result of calibrating from three orthogonal vanishing points.
#[derive(Debug, Clone)]
pub struct VpCalibration {
    pub k: CalibrationMatrix,
    pub conic: CalibratingConic,
    pub radius: f64,
    /// Set when the triangle is so close to right-angled that the recovered
    /// radius is much smaller than the vanishing-point scale; the estimate
    /// is then numerically fragile.
    pub ill_conditioned: bool,
}

/// Calibrating conic from the vanishing points of three mutually orthogonal
/// directions, assuming square pixels: the centre is the orthocentre of the
/// triangle and `r² = -(v₁-p)·(v₂-p)`, the condition that each reflected
/// polar passes through the other two points.
pub fn conic_from_three_orthogonal_vps(
    v1: &HomPoint,
    v2: &HomPoint,
    v3: &HomPoint,
) -> Result<VpCalibration, CalibrationError> {
    let pts = [v1, v2, v3];
    let eucl: Vec<Vector2<f64>> = pts
        .iter()
        .map(|p| p.to_euclidean().ok_or(CalibrationError::VanishingPointAtInfinity))
        .collect::<Result<_, _>>()?;

    let det = nalgebra::Matrix3::from_columns(&[v1.canonical(), v2.canonical(), v3.canonical()])
        .determinant();
    if det.abs() < DEFAULT_TOL {
        return Err(CalibrationError::CollinearVanishingPoints);
    }

    // orthocentre as the exact meet of two altitudes
    let alt1 = perpendicular_through(v1, &join(v2, v3)?)?;
    let alt2 = perpendicular_through(v2, &join(v1, v3)?)?;
    let ortho = meet(&alt1, &alt2)?;
    let p = ortho.to_euclidean().ok_or(CalibrationError::CollinearVanishingPoints)?;

    let r2s = [
        -(eucl[0] - p).dot(&(eucl[1] - p)),
        -(eucl[1] - p).dot(&(eucl[2] - p)),
        -(eucl[0] - p).dot(&(eucl[2] - p)),
    ];
    let r_squared = r2s.iter().sum::<f64>() / 3.0;
    if r_squared <= 0.0 {
        return Err(CalibrationError::NonAcuteTriangle { r_squared });
    }
    let scale2 = eucl.iter().map(|e| (e - p).norm_squared()).fold(0.0, f64::max);
    let ill_conditioned = r_squared < 1e-6 * scale2;

    let radius = r_squared.sqrt();
    let k = CalibrationMatrix::with_focal(radius, p[0], p[1])?;
    Ok(VpCalibration { k, conic: calibrating_conic_from_k(&k), radius, ill_conditioned })
}

/// Foot of the perpendicular from the principal point to a line, plus the
/// distance; shared by the conformal constructions.
pub(crate) fn principal_foot(
    k: &CalibrationMatrix,
    line: &HomLine,
) -> Result<(Vector2<f64>, f64), GeometryError> {
    let pp = k.principal_point();
    let foot = foot_of_perpendicular(&pp, line)?;
    let fe = foot.to_euclidean().ok_or(GeometryError::PointAtInfinity)?;
    Ok((fe, (fe - k.principal_point_xy()).norm()))
}
