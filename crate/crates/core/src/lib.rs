//! Geometric camera calibration and planar odometry.
//!
//! The toolkit is organized around two constructs that can be drawn on top of
//! an image:
//!
//! - the **calibrating conic**, a real conic that encodes the camera
//!   calibration (for square pixels it is a circle of radius `f` centred at
//!   the principal point), and
//! - the **conformal point**, the unique point from which angles subtended by
//!   horizon points equal true angles in the world plane.
//!
//! On top of these, the crate provides exact angle measurement between image
//! rays, focal-length recovery from vanishing geometry, and
//! rotation/translation odometry under planar camera motion, together with a
//! synthetic pinhole-camera generator used as the test oracle.
//!
//! Module map:
//!
//! - [`projective`] — homogeneous points/lines, conics, cross-ratio, polars.
//! - [`calibration`] — calibration matrix, IAC, calibrating conic, angle
//!   formulas, calibration from three orthogonal vanishing points.
//! - [`conformal`] — conformal-point constructions, plane angles, focal
//!   length from vanishing points, camera tilt, field of view.
//! - [`odometry`] — homography estimation, horizon extraction, two-point
//!   rotation, robust aggregation, rotation averaging, translation recovery.
//! - [`synth`] — synthetic cameras, planar scenes, and sequence generation.

pub mod calibration;
pub mod conformal;
pub mod odometry;
pub mod projective;
pub mod synth;
pub mod tol;

pub use nalgebra;
