//! Physical constants, unit systems and the GUP scale relations.
//!
//! The engine itself works in natural units. SI values exist for reporting
//! the Planck-scale numbers behind a dimensionless `a0`.

use serde::{Deserialize, Serialize};

use crate::error::{GupError, Result};

/// Reduced Planck constant in J*s (CODATA 2018).
pub const HBAR_SI: f64 = 1.054_571_817e-34;
/// Speed of light in m/s (exact).
pub const C_SI: f64 = 299_792_458.0;
/// Planck length in m (CODATA 2018).
pub const PLANCK_LENGTH_SI: f64 = 1.616_255e-35;
/// Planck mass in kg (CODATA 2018).
pub const PLANCK_MASS_SI: f64 = 2.176_434e-8;
/// Order of magnitude of the Planck energy M_pl c^2, in GeV.
pub const PLANCK_ENERGY_GEV: f64 = 1.0e19;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitMode {
    Natural,
    Si,
}

/// A consistent set of constants. In natural mode hbar = c = 1 exactly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitSystem {
    mode: UnitMode,
    hbar: f64,
    c: f64,
    planck_length: f64,
    planck_mass: f64,
}

impl UnitSystem {
    /// Natural units with unit Planck length and mass.
    pub const fn natural() -> Self {
        Self {
            mode: UnitMode::Natural,
            hbar: 1.0,
            c: 1.0,
            planck_length: 1.0,
            planck_mass: 1.0,
        }
    }

    /// Natural units with the Planck scale chosen by the caller.
    pub fn natural_with_scale(planck_length: f64, planck_mass: f64) -> Result<Self> {
        check_positive("planck_length", planck_length)?;
        check_positive("planck_mass", planck_mass)?;
        Ok(Self {
            planck_length,
            planck_mass,
            ..Self::natural()
        })
    }

    pub const fn si() -> Self {
        Self {
            mode: UnitMode::Si,
            hbar: HBAR_SI,
            c: C_SI,
            planck_length: PLANCK_LENGTH_SI,
            planck_mass: PLANCK_MASS_SI,
        }
    }

    pub fn mode(&self) -> UnitMode {
        self.mode
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn planck_length(&self) -> f64 {
        self.planck_length
    }

    pub fn planck_mass(&self) -> f64 {
        self.planck_mass
    }
}

impl Default for UnitSystem {
    fn default() -> Self {
        Self::natural()
    }
}

/// The deformation scale `a` (inverse momentum) together with the
/// dimensionless `a0` it was built from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GupParameter {
    pub a: f64,
    pub a0: f64,
}

impl GupParameter {
    /// Wraps a raw `a` already expressed in engine units.
    pub fn from_a(a: f64) -> Result<Self> {
        if !(a >= 0.0 && a.is_finite()) {
            return Err(GupError::Domain(format!("GUP parameter a must be >= 0, got {a}")));
        }
        Ok(Self { a, a0: a })
    }
}

fn check_positive(name: &str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(GupError::Domain(format!("{name} must be > 0, got {value}")))
    }
}

/// `a = a0 * l_pl / hbar` in SI mode. In natural mode `a = a0`; the caller
/// fixes the scale.
pub fn gup_from_a0(a0: f64, units: &UnitSystem) -> Result<GupParameter> {
    if !(a0 >= 0.0 && a0.is_finite()) {
        return Err(GupError::Domain(format!("a0 must be >= 0, got {a0}")));
    }
    let a = match units.mode {
        UnitMode::Si => a0 * units.planck_length / units.hbar,
        UnitMode::Natural => a0,
    };
    Ok(GupParameter { a, a0 })
}

/// Minimum measurable length `a0 * l_pl`.
pub fn min_length(a0: f64, units: &UnitSystem) -> Result<f64> {
    check_positive("a0", a0)?;
    Ok(a0 * units.planck_length)
}

/// Maximum measurable momentum `M_pl * c / a0`.
pub fn max_momentum(a0: f64, units: &UnitSystem) -> Result<f64> {
    check_positive("a0", a0)?;
    Ok(units.planck_mass * units.c / a0)
}
