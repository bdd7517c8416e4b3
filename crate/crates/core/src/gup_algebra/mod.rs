//! The deformed momentum map and its deformed commutator.
//!
//! Uncorrected variables `(x0, p0)` are canonical. The physical momentum is
//! `p = p0 (1 - a|p0| + 2a^2|p0|^2)` and the target algebra is
//!
//! ```text
//! [x_i, p_j] = i hbar [d_ij - a(p d_ij + p_i p_j / p) + a^2 (p^2 d_ij + 3 p_i p_j)]
//! ```
//!
//! written in the deformed variables. The map reproduces the target through
//! O(a^2); the residual is O(a^3). Values returned here are in units of hbar.

mod grid;
mod uncertainty;

use num_complex::Complex64;

use crate::error::{GupError, Result};
use crate::vector::Vector3;

pub use grid::{commutator_residual, grid_operator_lab, CommutatorReport, MomentumGrid};
pub use uncertainty::{gaussian_state, normalize_state, uncertainty_check, UncertaintyReport, UNCERTAINTY_TOLERANCE};

/// Scalar factor `1 - a p0 + 2 a^2 p0^2` of the momentum map.
pub fn deformation_factor(p0: f64, a: f64) -> f64 {
    1.0 - a * p0 + 2.0 * a * a * p0 * p0
}

/// `p = p0 (1 - a|p0| + 2a^2|p0|^2)`, applied componentwise.
pub fn deform_momentum(p0: Vector3, a: f64) -> Vector3 {
    p0 * deformation_factor(p0.norm(), a)
}

fn axis_index(name: &'static str, i: usize) -> Result<usize> {
    match i {
        1..=3 => Ok(i - 1),
        _ => Err(GupError::IndexOutOfRange {
            name,
            value: i,
            expected: "1..=3",
        }),
    }
}

fn kronecker(i: usize, j: usize) -> f64 {
    if i == j {
        1.0
    } else {
        0.0
    }
}

fn check_singular(p0: Vector3, a: f64) -> Result<f64> {
    if a < 0.0 || !a.is_finite() {
        return Err(GupError::Domain(format!("GUP parameter a must be >= 0, got {a}")));
    }
    let norm = p0.norm();
    if a > 0.0 && norm == 0.0 {
        return Err(GupError::Singular(
            "the p_i p_j / p term is undefined at zero momentum".into(),
        ));
    }
    Ok(norm)
}

/// Right-hand side of the deformed commutator `[x_i, p_j]`, evaluated in the
/// deformed momentum `p = deform_momentum(p0, a)`. Axes are 1-based.
pub fn commutator_target(p0: Vector3, i: usize, j: usize, a: f64) -> Result<Complex64> {
    let (ii, jj) = (axis_index("i", i)?, axis_index("j", j)?);
    check_singular(p0, a)?;
    let d = kronecker(ii, jj);
    if a == 0.0 {
        return Ok(Complex64::new(0.0, d));
    }
    let p = deform_momentum(p0, a);
    let pn = p.norm();
    let pij = p[ii] * p[jj];
    let bracket = d - a * (pn * d + pij / pn) + a * a * (pn * pn * d + 3.0 * pij);
    Ok(Complex64::new(0.0, bracket))
}

/// `[x0_i, p_j(p0)] = i hbar dp_j/dp0_i`, the exact commutator realized by
/// the momentum map. Axes are 1-based.
pub fn jacobian_commutator(p0: Vector3, i: usize, j: usize, a: f64) -> Result<Complex64> {
    let (ii, jj) = (axis_index("i", i)?, axis_index("j", j)?);
    let norm = check_singular(p0, a)?;
    let d = kronecker(ii, jj);
    if a == 0.0 {
        return Ok(Complex64::new(0.0, d));
    }
    let radial = -a * p0[ii] / norm + 4.0 * a * a * p0[ii];
    let value = d * deformation_factor(norm, a) + p0[jj] * radial;
    Ok(Complex64::new(0.0, value))
}

/// Frobenius norm over all nine axis pairs of `jacobian - target`.
pub fn consistency_defect(p0: Vector3, a: f64) -> Result<f64> {
    let mut sum = 0.0;
    for i in 1..=3 {
        for j in 1..=3 {
            let diff = jacobian_commutator(p0, i, j, a)? - commutator_target(p0, i, j, a)?;
            sum += diff.norm_sqr();
        }
    }
    Ok(sum.sqrt())
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Fitted exponent `k` in `consistency_defect(p0, a) ~ C a^k` over the given
/// values of `a`.
pub fn consistency_exponent(p0: Vector3, a_values: &[f64]) -> Result<f64> {
    let defects = a_values
        .iter()
        .map(|&a| consistency_defect(p0, a))
        .collect::<Result<Vec<_>>>()?;
    Ok(log_log_slope(a_values, &defects))
}
