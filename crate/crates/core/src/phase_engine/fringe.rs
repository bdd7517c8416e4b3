use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

/// Two-path interference readout of a phase difference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FringeShift {
    pub phase: f64,
    /// Fringe displacement in units of one fringe.
    pub delta_n: f64,
}

impl FringeShift {
    /// `cos^2((phase + offset) / 2)`.
    pub fn intensity(&self, offset: f64) -> f64 {
        ((self.phase + offset) / 2.0).cos().powi(2)
    }
}

pub fn fringe_shift(phase: f64) -> FringeShift {
    FringeShift {
        phase,
        delta_n: phase / TAU,
    }
}
