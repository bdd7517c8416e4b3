//! Robertson-type bound `dx dp >= (hbar/2)(1 - 2a<p> + 4a^2<p^2>)` evaluated
//! on momentum-representation states.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{deform_momentum, MomentumGrid};
use crate::error::{GupError, Result};
use crate::vector::Vector3;

/// Slack (in units of hbar) allowed when deciding whether the bound holds.
pub const UNCERTAINTY_TOLERANCE: f64 = 1e-6;
const NORM_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UncertaintyReport {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub delta_x: f64,
    pub delta_p: f64,
    pub mean_p: f64,
    pub mean_p_squared: f64,
}

/// `d psi / dp0`: fourth-order central differences inside, second-order
/// stencils on the two points nearest each edge.
fn derivative(grid: &MomentumGrid, psi: &[Complex64]) -> Vec<Complex64> {
    let n = psi.len();
    let h = grid.spacing();
    (0..n)
        .map(|k| {
            if k == 0 {
                (-3.0 * psi[0] + 4.0 * psi[1] - psi[2]) / (2.0 * h)
            } else if k + 1 == n {
                (3.0 * psi[n - 1] - 4.0 * psi[n - 2] + psi[n - 3]) / (2.0 * h)
            } else if k == 1 || k + 2 == n {
                (psi[k + 1] - psi[k - 1]) / (2.0 * h)
            } else {
                (8.0 * (psi[k + 1] - psi[k - 1]) - (psi[k + 2] - psi[k - 2])) / (12.0 * h)
            }
        })
        .collect()
}

/// Rescales `state` to unit trapezoidal norm on `grid`.
pub fn normalize_state(grid: &MomentumGrid, state: &mut [Complex64]) -> Result<()> {
    let norm = grid.trapezoid(state.iter().map(|z| z.norm_sqr())).sqrt();
    if !(norm > 0.0 && norm.is_finite()) {
        return Err(GupError::Domain("cannot normalize a zero state".into()));
    }
    state.iter_mut().for_each(|z| *z /= norm);
    Ok(())
}

/// Normalized Gaussian wave packet in momentum space with probability
/// density width `sigma` about `centre` and mean position `position`.
pub fn gaussian_state(grid: &MomentumGrid, centre: f64, sigma: f64, position: f64) -> Result<Vec<Complex64>> {
    if !(sigma > 0.0) {
        return Err(GupError::Domain(format!("sigma must be > 0, got {sigma}")));
    }
    let mut psi: Vec<Complex64> = grid
        .points()
        .iter()
        .map(|&p| {
            let envelope = (-(p - centre).powi(2) / (4.0 * sigma * sigma)).exp();
            // x = i d/dp, so <x> = position needs the phase exp(-i position p)
            Complex64::from_polar(envelope, -position * p)
        })
        .collect();
    normalize_state(grid, &mut psi)?;
    Ok(psi)
}

/// Computes `dx dp` and the deformed lower bound for a unit-norm state.
/// Units of hbar; `x = i d/dp0`, `p` is the deformed momentum. The state must
/// vanish at both grid edges for `x` to be Hermitian.
pub fn uncertainty_check(grid: &MomentumGrid, state: &[Complex64], a: f64) -> Result<UncertaintyReport> {
    if state.len() != grid.len() {
        return Err(GupError::Domain(format!(
            "state has {} amplitudes for a {}-point grid",
            state.len(),
            grid.len()
        )));
    }
    if !(a >= 0.0) {
        return Err(GupError::Domain(format!("GUP parameter a must be >= 0, got {a}")));
    }
    let norm = grid.trapezoid(state.iter().map(|z| z.norm_sqr()));
    if (norm - 1.0).abs() > NORM_TOLERANCE {
        return Err(GupError::Precondition(format!(
            "state is not normalized: <psi|psi> = {norm}"
        )));
    }

    let dpsi = derivative(grid, state);
    let i = Complex64::new(0.0, 1.0);
    let mean_x = grid.trapezoid(state.iter().zip(&dpsi).map(|(s, d)| (s.conj() * i * d).re));
    let mean_x2 = grid.trapezoid(dpsi.iter().map(|d| d.norm_sqr()));

    let deformed: Vec<f64> = grid
        .points()
        .iter()
        .map(|&p| deform_momentum(Vector3::new(p, 0.0, 0.0), a).x)
        .collect();
    let density: Vec<f64> = state.iter().map(|z| z.norm_sqr()).collect();
    let mean_p = grid.trapezoid(deformed.iter().zip(&density).map(|(p, w)| p * w));
    let mean_p2 = grid.trapezoid(deformed.iter().zip(&density).map(|(p, w)| p * p * w));

    let delta_x = (mean_x2 - mean_x * mean_x).max(0.0).sqrt();
    let delta_p = (mean_p2 - mean_p * mean_p).max(0.0).sqrt();
    let lhs = delta_x * delta_p;
    let rhs = 0.5 * (1.0 - 2.0 * a * mean_p + 4.0 * a * a * mean_p2);
    Ok(UncertaintyReport {
        lhs,
        rhs,
        holds: lhs >= rhs - UNCERTAINTY_TOLERANCE,
        delta_x,
        delta_p,
        mean_p,
        mean_p_squared: mean_p2,
    })
}
