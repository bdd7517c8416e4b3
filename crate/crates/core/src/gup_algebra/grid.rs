//! Finite-dimensional momentum-representation check of the deformed
//! commutator on a positive half-line.
//!
//! `x = i hbar d/dp0` is a second-order central difference, `p` is the
//! diagonal multiplication by the deformed momentum. The dense commutator
//! `[x, p]` applied to a smooth probe state is compared row by row with
//! `i hbar dp/dp0`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{commutator_target, jacobian_commutator, log_log_slope};
use crate::error::{GupError, Result};
use crate::vector::Vector3;

/// Smallest grid the lab accepts.
pub const MIN_LAB_POINTS: usize = 64;
/// Upper bound on `a * p_max` for the lab.
pub const PERTURBATIVE_LIMIT: f64 = 0.5;

/// Uniform 1D momentum grid on `[p_min, p_max]` with `p_min > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumGrid {
    p_min: f64,
    p_max: f64,
    points: Vec<f64>,
    spacing: f64,
    boundary_margin: usize,
}

impl MomentumGrid {
    pub fn new(p_min: f64, p_max: f64, n_points: usize, boundary_margin: usize) -> Result<Self> {
        if !(p_min > 0.0 && p_min.is_finite()) {
            return Err(GupError::Domain(format!("grid p_min must be > 0, got {p_min}")));
        }
        if !(p_max > p_min && p_max.is_finite()) {
            return Err(GupError::Domain(format!(
                "grid p_max must exceed p_min, got [{p_min}, {p_max}]"
            )));
        }
        if n_points < 3 || 2 * boundary_margin >= n_points {
            return Err(GupError::Domain(format!(
                "grid of {n_points} points cannot exclude {boundary_margin} points at each edge"
            )));
        }
        let spacing = (p_max - p_min) / (n_points - 1) as f64;
        let points = (0..n_points).map(|k| p_min + k as f64 * spacing).collect();
        Ok(Self {
            p_min,
            p_max,
            points,
            spacing,
            boundary_margin,
        })
    }

    /// Same interval with the spacing halved (`2n - 1` points).
    pub fn refined(&self) -> Self {
        Self::new(self.p_min, self.p_max, 2 * self.len() - 1, self.boundary_margin)
            .expect("refining a valid grid stays valid")
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn p_min(&self) -> f64 {
        self.p_min
    }

    pub fn p_max(&self) -> f64 {
        self.p_max
    }

    pub fn boundary_margin(&self) -> usize {
        self.boundary_margin
    }

    /// Row indices that take part in residual norms.
    pub fn interior(&self) -> std::ops::Range<usize> {
        self.boundary_margin..self.len() - self.boundary_margin
    }

    /// Composite trapezoidal rule for samples on this grid.
    pub fn trapezoid(&self, values: impl IntoIterator<Item = f64>) -> f64 {
        let n = self.len();
        let sum: f64 = values
            .into_iter()
            .enumerate()
            .map(|(k, v)| if k == 0 || k + 1 == n { 0.5 * v } else { v })
            .sum();
        sum * self.spacing
    }
}

/// Outcome of [`grid_operator_lab`]. Values are in units of hbar.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CommutatorReport {
    pub a: f64,
    pub grid_points: usize,
    pub h: f64,
    pub max_residual_interior: f64,
    pub discretization_order: f64,
    pub gup_scaling_exponent: f64,
}

/// Dense row-major `n x n` complex matrix.
struct Dense {
    n: usize,
    data: Vec<Complex64>,
}

impl Dense {
    fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    fn at(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.n + c]
    }

    fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.n + c] = v;
    }

    fn apply_row(&self, r: usize, v: &[Complex64]) -> Complex64 {
        self.data[r * self.n..(r + 1) * self.n]
            .iter()
            .zip(v)
            .map(|(m, x)| m * x)
            .sum()
    }
}

/// `x = i hbar D` with `D` the central difference (one-sided rows at the
/// edges are left empty; those rows are excluded from residuals).
fn position_operator(grid: &MomentumGrid) -> Dense {
    let n = grid.len();
    let mut x = Dense::zeros(n);
    let k = Complex64::new(0.0, 1.0 / (2.0 * grid.spacing()));
    for r in 1..n - 1 {
        x.set(r, r + 1, k);
        x.set(r, r - 1, -k);
    }
    x
}

/// `[x, p]` for diagonal `p = diag(values)`: `(XP - PX)_{rc} = X_{rc} (p_c - p_r)`.
fn commutator_with_diagonal(x: &Dense, values: &[f64]) -> Dense {
    let n = x.n;
    let mut out = Dense::zeros(n);
    for r in 0..n {
        for c in 0..n {
            let xp = x.at(r, c) * values[c];
            let px = values[r] * x.at(r, c);
            out.set(r, c, xp - px);
        }
    }
    out
}

/// Smooth probe centred on the grid with a quarter-range width.
fn probe_state(grid: &MomentumGrid) -> Vec<Complex64> {
    let centre = 0.5 * (grid.p_min() + grid.p_max());
    let width = 0.25 * (grid.p_max() - grid.p_min());
    grid.points()
        .iter()
        .map(|p| Complex64::new((-(p - centre).powi(2) / (2.0 * width * width)).exp(), 0.0))
        .collect()
}

fn check_lab_inputs(grid: &MomentumGrid, a: f64) -> Result<()> {
    if grid.len() < MIN_LAB_POINTS {
        return Err(GupError::Domain(format!(
            "grid lab needs at least {MIN_LAB_POINTS} points, got {}",
            grid.len()
        )));
    }
    if grid.boundary_margin() < 2 {
        return Err(GupError::Domain(
            "grid lab needs a boundary margin of at least 2".into(),
        ));
    }
    if !(a >= 0.0 && a * grid.p_max() < PERTURBATIVE_LIMIT) {
        return Err(GupError::Domain(format!(
            "a * p_max must lie in [0, {PERTURBATIVE_LIMIT}), got {}",
            a * grid.p_max()
        )));
    }
    Ok(())
}

/// Max over interior rows of `|([x, p] psi)_k - J(p_k) psi_k|`, where `J` is
/// the analytic Jacobian commutator and `psi` a unit-height Gaussian probe.
pub fn commutator_residual(grid: &MomentumGrid, a: f64) -> Result<f64> {
    check_lab_inputs(grid, a)?;
    let deformed: Vec<f64> = grid
        .points()
        .iter()
        .map(|&p| super::deform_momentum(Vector3::new(p, 0.0, 0.0), a).x)
        .collect();
    let commutator = commutator_with_diagonal(&position_operator(grid), &deformed);
    let psi = probe_state(grid);
    let mut worst: f64 = 0.0;
    for k in grid.interior() {
        let expected = jacobian_commutator(Vector3::new(grid.points()[k], 0.0, 0.0), 1, 1, a)? * psi[k];
        worst = worst.max((commutator.apply_row(k, &psi) - expected).norm());
    }
    Ok(worst)
}

/// Max over grid points of `|jacobian - target|` for the 1D `(1, 1)` component.
fn pointwise_defect(grid: &MomentumGrid, a: f64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &p in grid.points() {
        let p0 = Vector3::new(p, 0.0, 0.0);
        let d = jacobian_commutator(p0, 1, 1, a)? - commutator_target(p0, 1, 1, a)?;
        worst = worst.max(d.norm());
    }
    Ok(worst)
}

/// Builds the operator pair on `grid`, measures the commutator residual, its
/// convergence order under halving of the spacing, and the power of `a` with
/// which the analytic map departs from the target algebra.
///
/// The scaling fit uses `{a, a/10, a/100}`, or a decade ladder starting at
/// `min(0.1, 0.25 / p_max)` when `a = 0`.
pub fn grid_operator_lab(grid: &MomentumGrid, a: f64) -> Result<CommutatorReport> {
    check_lab_inputs(grid, a)?;
    let coarse = commutator_residual(grid, a)?;
    let fine_grid = grid.refined();
    let fine = commutator_residual(&fine_grid, a)?;
    let discretization_order = (coarse / fine).ln() / (grid.spacing() / fine_grid.spacing()).ln();

    let top = if a > 0.0 { a } else { 0.1_f64.min(0.25 / grid.p_max()) };
    let ladder = [top, top / 10.0, top / 100.0];
    let defects = ladder
        .iter()
        .map(|&x| pointwise_defect(grid, x))
        .collect::<Result<Vec<_>>>()?;
    let gup_scaling_exponent = log_log_slope(&ladder, &defects);

    Ok(CommutatorReport {
        a,
        grid_points: grid.len(),
        h: grid.spacing(),
        max_residual_interior: coarse,
        discretization_order,
        gup_scaling_exponent,
    })
}
