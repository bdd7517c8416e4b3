use serde::{Deserialize, Serialize};

use crate::error::{GupError, Result};
use crate::vector::Vector3;

/// A straight line through `point` along the unit vector `direction`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub point: Vector3,
    pub direction: Vector3,
}

impl Axis {
    pub fn new(point: Vector3, direction: Vector3) -> Result<Self> {
        let direction = direction
            .normalized()
            .ok_or_else(|| GupError::Geometry("axis direction must be nonzero".into()))?;
        if !point.is_finite() {
            return Err(GupError::Geometry("axis point must be finite".into()));
        }
        Ok(Self { point, direction })
    }

    /// The z-axis through the origin.
    pub const fn z() -> Self {
        Self {
            point: Vector3::ZERO,
            direction: Vector3::Z,
        }
    }

    /// Component of `point - self.point` perpendicular to the axis.
    pub fn radial(&self, point: Vector3) -> Vector3 {
        let rel = point - self.point;
        rel - self.direction * rel.dot(self.direction)
    }

    pub fn distance(&self, point: Vector3) -> f64 {
        self.radial(point).norm()
    }

    /// Right-handed orthonormal pair `(e1, e2)` spanning the plane normal to
    /// the axis, with `e1 x e2 = direction`.
    pub fn transverse_basis(&self) -> (Vector3, Vector3) {
        let d = self.direction;
        let helper = if d.x.abs() < 0.9 { Vector3::X } else { Vector3::Y };
        let e1 = (helper - d * helper.dot(d))
            .normalized()
            .expect("helper is not parallel to axis");
        let e2 = d.cross(e1);
        (e1, e2)
    }

    /// Polar angle of `point` about the axis.
    pub fn angle(&self, point: Vector3) -> f64 {
        let (e1, e2) = self.transverse_basis();
        let r = self.radial(point);
        r.dot(e2).atan2(r.dot(e1))
    }
}

impl Default for Axis {
    fn default() -> Self {
        Self::z()
    }
}

/// Ideal infinitely long solenoid carrying magnetic flux `flux` inside a
/// cylinder of radius `radius` about `axis`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolenoidSpec {
    pub flux: f64,
    pub radius: f64,
    #[serde(default)]
    pub axis: Axis,
}

impl SolenoidSpec {
    pub fn new(flux: f64, radius: f64) -> Result<Self> {
        Self::with_axis(flux, radius, Axis::z())
    }

    pub fn with_axis(flux: f64, radius: f64, axis: Axis) -> Result<Self> {
        if !flux.is_finite() {
            return Err(GupError::Domain(format!("solenoid flux must be finite, got {flux}")));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(GupError::Domain(format!("solenoid radius must be > 0, got {radius}")));
        }
        Ok(Self { flux, radius, axis })
    }
}

/// Azimuthal vector potential of the solenoid: `Phi / (2 pi rho)` outside,
/// `Phi rho / (2 pi R^2)` inside.
pub fn solenoid_a(point: Vector3, solenoid: &SolenoidSpec) -> Result<Vector3> {
    let radial = solenoid.axis.radial(point);
    let rho = radial.norm();
    if rho == 0.0 || !rho.is_finite() {
        return Err(GupError::Singular(format!(
            "vector potential requested on the solenoid axis at {point:?}"
        )));
    }
    let azimuth = solenoid.axis.direction.cross(radial / rho);
    let two_pi = 2.0 * std::f64::consts::PI;
    let magnitude = if rho >= solenoid.radius {
        solenoid.flux / (two_pi * rho)
    } else {
        solenoid.flux * rho / (two_pi * solenoid.radius * solenoid.radius)
    };
    Ok(azimuth * magnitude)
}
