use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::loops::{LoopPath, Segment};
use super::solenoid::Axis;
use crate::error::{GupError, Result};

/// Closest approach to the axis that still counts as off-axis.
pub const AXIS_CLEARANCE: f64 = 1e-9;
/// Largest accepted distance of the accumulated turn count from an integer.
pub const MAX_WINDING_RESIDUAL: f64 = 1e-3;

const BASE_SAMPLES: usize = 64;
const MAX_STEP_ANGLE: f64 = PI / 8.0;
const MAX_BISECTIONS: u32 = 40;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Winding {
    pub winding: i64,
    /// `|turns - winding|` before rounding.
    pub residual: f64,
}

fn wrap(angle: f64) -> f64 {
    let mut d = angle % TAU;
    if d > PI {
        d -= TAU;
    } else if d <= -PI {
        d += TAU;
    }
    d
}

/// Signed angle swept about `axis` between parameters `s0` and `s1`, bisected
/// until each step turns by less than pi/8.
fn swept(seg: &Segment, axis: &Axis, s0: f64, s1: f64, depth: u32, k: usize) -> Result<f64> {
    let p1 = seg.position(s1);
    if axis.distance(p1) < AXIS_CLEARANCE {
        return Err(GupError::Geometry(format!(
            "segment {k} passes within {AXIS_CLEARANCE:e} of the axis at s = {s1}"
        )));
    }
    let d = wrap(axis.angle(p1) - axis.angle(seg.position(s0)));
    if d.abs() <= MAX_STEP_ANGLE || depth >= MAX_BISECTIONS {
        return Ok(d);
    }
    let mid = 0.5 * (s0 + s1);
    Ok(swept(seg, axis, s0, mid, depth + 1, k)? + swept(seg, axis, mid, s1, depth + 1, k)?)
}

/// Number of signed turns the loop makes about `axis`, by accumulating the
/// polar angle along the curve.
pub fn winding_number(path: &LoopPath, axis: &Axis) -> Result<Winding> {
    if axis.distance(path.start()) < AXIS_CLEARANCE {
        return Err(GupError::Geometry("loop starts on the axis".into()));
    }
    let mut total = 0.0;
    for (k, seg) in path.segments().iter().enumerate() {
        for j in 0..BASE_SAMPLES {
            let s0 = j as f64 / BASE_SAMPLES as f64;
            let s1 = (j + 1) as f64 / BASE_SAMPLES as f64;
            total += swept(seg, axis, s0, s1, 0, k)?;
        }
    }
    let turns = total / TAU;
    let winding = turns.round();
    let residual = (turns - winding).abs();
    if residual > MAX_WINDING_RESIDUAL {
        return Err(GupError::AmbiguousWinding { residual });
    }
    Ok(Winding {
        winding: winding as i64,
        residual,
    })
}
