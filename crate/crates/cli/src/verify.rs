//! Self-checks of the algebra layer with a JSON report.

use std::collections::BTreeMap;

use gupab_core::clifford::{alphas, beta, gammas, metric, DiracMatrix};
use gupab_core::gup_algebra::{
    consistency_exponent, gaussian_state, grid_operator_lab, uncertainty_check, MomentumGrid,
};
use gupab_core::Vector3;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::CliResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Fast,
    Full,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    /// Perturbs one gamma matrix entry before the algebra check.
    pub inject_fault: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: &'static str,
    pub passed: bool,
    pub requirement: String,
    pub measured: BTreeMap<&'static str, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub level: Level,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckReport> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

pub const SLOPE_WINDOW: (f64, f64) = (2.7, 3.3);
pub const ORDER_WINDOW: (f64, f64) = (1.7, 2.3);
pub const LAB_RESIDUAL_LIMIT: f64 = 1e-3;
pub const EQUALITY_TOLERANCE: f64 = 1e-3;

fn within(x: f64, (lo, hi): (f64, f64)) -> bool {
    x >= lo && x <= hi
}

fn clifford_check(inject_fault: bool) -> CheckReport {
    let mut g = gammas();
    if inject_fault {
        let z = g[2].get(0, 3);
        g[2].set(0, 3, z + Complex64::new(1e-3, 0.0));
    }
    let eye = DiracMatrix::identity();
    let mut gamma_residual = 0.0_f64;
    for mu in 0..4 {
        for nu in 0..4 {
            let d = g[mu]
                .anticommutator(&g[nu])
                .max_abs_diff(&eye.scale(2.0 * metric(mu, nu)));
            gamma_residual = gamma_residual.max(d);
        }
    }
    let al = alphas();
    let b = beta();
    let mut alpha_residual = 0.0_f64;
    for i in 0..3 {
        alpha_residual = alpha_residual.max(al[i].anticommutator(&b).max_abs());
        for j in 0..3 {
            let target = if i == j { eye.scale(2.0) } else { DiracMatrix::zero() };
            alpha_residual = alpha_residual.max(al[i].anticommutator(&al[j]).max_abs_diff(&target));
        }
    }
    alpha_residual = alpha_residual.max(b.anticommutator(&b).max_abs_diff(&eye.scale(2.0)));
    CheckReport {
        name: "clifford_relations",
        passed: gamma_residual == 0.0 && alpha_residual == 0.0,
        requirement: "all anticommutator residuals exactly 0".into(),
        measured: BTreeMap::from([
            ("gamma_residual", gamma_residual),
            ("alpha_beta_residual", alpha_residual),
        ]),
    }
}

/// Fifty deterministic momenta: a Fibonacci lattice of directions with
/// magnitudes spread over `[0.1, 2]`.
pub fn probe_momenta() -> Vec<Vector3> {
    let n = 50;
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|k| {
            let z = 1.0 - 2.0 * (k as f64 + 0.5) / n as f64;
            let r = (1.0 - z * z).sqrt();
            let phi = golden * k as f64;
            let frac = (k as f64 * 0.618_033_988_749_894_9).fract();
            let magnitude = 0.1 + 1.9 * frac;
            Vector3::new(r * phi.cos(), r * phi.sin(), z) * magnitude
        })
        .collect()
}

fn consistency_check() -> CliResult<CheckReport> {
    let ladder = [1e-1, 1e-2, 1e-3];
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for p0 in probe_momenta() {
        let s = consistency_exponent(p0, &ladder)?;
        lo = lo.min(s);
        hi = hi.max(s);
    }
    Ok(CheckReport {
        name: "deformation_consistency",
        passed: within(lo, SLOPE_WINDOW) && within(hi, SLOPE_WINDOW),
        requirement: format!(
            "log-log slope over a in {{0.1, 0.01, 0.001}} within [{}, {}]",
            SLOPE_WINDOW.0, SLOPE_WINDOW.1
        ),
        measured: BTreeMap::from([("min_slope", lo), ("max_slope", hi), ("probes", 50.0)]),
    })
}

fn uncertainty_sweep() -> CliResult<CheckReport> {
    let grid = MomentumGrid::new(0.05, 4.0, 4096, 2)?;
    let mut worst_margin = f64::INFINITY;
    let mut all_hold = true;
    let mut count = 0.0;
    for &a in &[0.0, 0.01, 0.05] {
        for &(centre, sigma, position) in &[(2.0, 0.2, 0.0), (1.8, 0.15, 1.5), (2.2, 0.25, -3.0)] {
            let psi = gaussian_state(&grid, centre, sigma, position)?;
            let r = uncertainty_check(&grid, &psi, a)?;
            all_hold &= r.holds;
            worst_margin = worst_margin.min((r.lhs - r.rhs) / r.rhs);
            count += 1.0;
        }
    }
    let minimal = uncertainty_check(&grid, &gaussian_state(&grid, 2.0, 0.2, 0.0)?, 0.0)?;
    let equality = (minimal.lhs - minimal.rhs).abs() / minimal.rhs;
    Ok(CheckReport {
        name: "uncertainty_bound",
        passed: all_hold && equality < EQUALITY_TOLERANCE,
        requirement: format!(
            "bound holds for every state; Gaussian equality at a = 0 within {EQUALITY_TOLERANCE} relative"
        ),
        measured: BTreeMap::from([
            ("states", count),
            ("worst_relative_margin", worst_margin),
            ("gaussian_equality_defect", equality),
        ]),
    })
}

fn grid_lab_check() -> CliResult<CheckReport> {
    let plain = grid_operator_lab(&MomentumGrid::new(1.0, 2.0, 256, 2)?, 0.0)?;
    let deformed = grid_operator_lab(&MomentumGrid::new(1.0, 2.0, 512, 2)?, 0.05)?;
    let passed = within(plain.discretization_order, ORDER_WINDOW)
        && deformed.max_residual_interior < LAB_RESIDUAL_LIMIT
        && within(deformed.gup_scaling_exponent, SLOPE_WINDOW);
    Ok(CheckReport {
        name: "grid_operator_lab",
        passed,
        requirement: format!(
            "order at a = 0 in [{}, {}]; residual at a = 0.05 below {LAB_RESIDUAL_LIMIT}; a-exponent in [{}, {}]",
            ORDER_WINDOW.0, ORDER_WINDOW.1, SLOPE_WINDOW.0, SLOPE_WINDOW.1
        ),
        measured: BTreeMap::from([
            ("order_at_a0", plain.discretization_order),
            ("residual_at_a0", plain.max_residual_interior),
            ("residual_at_a005", deformed.max_residual_interior),
            ("gup_scaling_exponent", deformed.gup_scaling_exponent),
            ("grid_points", deformed.grid_points as f64),
        ]),
    })
}

pub fn run_verify(level: Level, options: VerifyOptions) -> CliResult<VerifyReport> {
    let mut checks = vec![
        clifford_check(options.inject_fault),
        consistency_check()?,
        uncertainty_sweep()?,
    ];
    if level == Level::Full {
        checks.push(grid_lab_check()?);
    }
    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport { level, passed, checks })
}
