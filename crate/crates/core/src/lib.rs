//! Numerical engine for a minimal-length (GUP) deformation of relativistic
//! quantum mechanics and the resulting correction to the Aharonov-Bohm phase
//! of a charged spin-half particle.
//!
//! All engine-internal quantities use natural units (hbar = c = 1). The
//! Minkowski metric has signature (+, -, -, -).
//!
//! Module map:
//! - [`units`]: physical constants and the GUP scale relations.
//! - [`clifford`]: Dirac matrices, four-vectors and on-shell spinors.
//! - [`gup_algebra`]: the deformed momentum map and commutator checks.
//! - [`field_geometry`]: solenoid potential, loops, quadrature, winding numbers.
//! - [`phase_engine`]: standard and GUP-corrected phases, dispersion, fringes.

pub mod clifford;
pub mod error;
pub mod field_geometry;
pub mod gup_algebra;
pub mod phase_engine;
pub mod units;
pub mod vector;

pub use error::{GupError, Result};
pub use vector::Vector3;
