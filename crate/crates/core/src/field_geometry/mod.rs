//! Vector potentials, closed contours and the loop integrals built on them.
//!
//! Loops are purely spatial. Orientation: a loop that winds counterclockwise
//! about `+z` gives `+Phi` for the solenoid line integral.

mod loops;
mod quadrature;
mod solenoid;
mod winding;

use crate::vector::Vector3;

pub use loops::{
    make_loop, CircleParams, Harmonic, LoopPath, LoopSpec, PolylineParams, RectangleParams, Segment, SegmentShape,
    SmoothParams,
};
pub use quadrature::{
    integrate_loop, line_integral, loop_length, unit_interval_rule, Accumulate, LoopSample, QuadratureEstimate,
    QuadratureSpec, Refinement, MAX_NODES_PER_SEGMENT,
};
pub use solenoid::{solenoid_a, Axis, SolenoidSpec};
pub use winding::{winding_number, Winding, AXIS_CLEARANCE, MAX_WINDING_RESIDUAL};

/// A static vector field. Implementations must be reentrant.
pub trait VectorField {
    fn eval(&self, point: Vector3) -> Vector3;
}

impl<F: Fn(Vector3) -> Vector3> VectorField for F {
    fn eval(&self, point: Vector3) -> Vector3 {
        self(point)
    }
}

/// Evaluates to NaN on the axis so integrators report the bad sample.
impl VectorField for SolenoidSpec {
    fn eval(&self, point: Vector3) -> Vector3 {
        solenoid_a(point, self).unwrap_or(Vector3::new(f64::NAN, f64::NAN, f64::NAN))
    }
}

/// `A + grad chi`.
#[derive(Debug, Clone, Copy)]
pub struct GaugeShifted<A, G> {
    potential: A,
    gradient: G,
}

impl<A: VectorField, G: VectorField> VectorField for GaugeShifted<A, G> {
    fn eval(&self, point: Vector3) -> Vector3 {
        self.potential.eval(point) + self.gradient.eval(point)
    }
}

/// Gauge-transforms `potential` by a scalar whose gradient is `chi_gradient`.
/// The caller guarantees the scalar is single valued.
pub fn gauge_shift<A: VectorField, G: VectorField>(potential: A, chi_gradient: G) -> GaugeShifted<A, G> {
    GaugeShifted {
        potential,
        gradient: chi_gradient,
    }
}
