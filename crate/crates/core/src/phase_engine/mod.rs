//! Standard and GUP-corrected Aharonov-Bohm phases.
//!
//! The standard phase is `q` times the solenoid line integral. The
//! correction is the matrix-valued contour integral
//!
//! ```text
//! dPhi = -a q  loop-integral  slash(p0(s)) (p0 . dx/ds) ds
//! ```
//!
//! over the worldline of a particle moving along the loop at constant speed
//! `v`, so `dt/ds = |dr/ds| / v` and `p0 . dx/ds = (E/v - p)|dr/ds|`. The
//! temporal potential vanishes for the static solenoid.
//!
//! Orientation: reversing a loop negates the standard phase but leaves the
//! projected correction unchanged, because `dt > 0` along either direction.

mod dispersion;
mod fringe;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::clifford::{on_shell_spinor, slash, DiracMatrix, FourVector, SpinBranch, Spinor4};
use crate::error::{GupError, Result};
use crate::field_geometry::{
    integrate_loop, line_integral, LoopPath, LoopSample, QuadratureEstimate, QuadratureSpec, SolenoidSpec,
};

pub use dispersion::{dispersion, dispersion_hamiltonian, Dispersion};
pub use fringe::{fringe_shift, FringeShift};

/// Points per segment used to check that a loop stays outside the solenoid.
const CLEARANCE_SAMPLES: usize = 256;

/// Charged particle moving at constant speed `v` (natural units, `0 < v < 1`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParticleSpec {
    charge: f64,
    mass: f64,
    speed: f64,
}

impl ParticleSpec {
    pub fn new(charge: f64, mass: f64, speed: f64) -> Result<Self> {
        if !charge.is_finite() {
            return Err(GupError::Domain(format!("charge must be finite, got {charge}")));
        }
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(GupError::Domain(format!("mass must be > 0, got {mass}")));
        }
        if !(speed > 0.0 && speed < 1.0) {
            return Err(GupError::Domain(format!("speed must be in (0, 1), got {speed}")));
        }
        Ok(Self { charge, mass, speed })
    }

    pub fn charge(&self) -> f64 {
        self.charge
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn speed(&self) -> f64 {
        self.speed
    }

    pub fn lorentz_factor(&self) -> f64 {
        1.0 / (1.0 - self.speed * self.speed).sqrt()
    }

    pub fn energy(&self) -> f64 {
        self.lorentz_factor() * self.mass
    }

    pub fn momentum(&self) -> f64 {
        self.lorentz_factor() * self.mass * self.speed
    }

    /// `p0 . dx/ds` per unit arc length: `E / v - p`.
    pub fn worldline_weight(&self) -> f64 {
        self.energy() / self.speed - self.momentum()
    }
}

/// Four-momentum of the particle along a loop: `(E, p t(s))` with `t` the
/// unit tangent.
#[derive(Debug, Clone, Copy)]
pub struct KinematicMomentum<'a> {
    path: &'a LoopPath,
    energy: f64,
    momentum: f64,
}

impl KinematicMomentum<'_> {
    pub fn at(&self, segment: usize, s: f64) -> FourVector {
        let tangent = self.path.segments()[segment].tangent(s);
        self.along(tangent)
    }

    fn along(&self, tangent: crate::vector::Vector3) -> FourVector {
        let direction = tangent.normalized().expect("loop tangents are nonvanishing");
        FourVector::from_parts(self.energy, direction * self.momentum)
    }
}

pub fn kinematic_momentum<'a>(path: &'a LoopPath, particle: &ParticleSpec) -> KinematicMomentum<'a> {
    KinematicMomentum {
        path,
        energy: particle.energy(),
        momentum: particle.momentum(),
    }
}

/// Which segments a correction integral runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegmentSelection {
    All,
    Only(usize),
}

impl SegmentSelection {
    fn includes(&self, segment: usize) -> bool {
        match self {
            SegmentSelection::All => true,
            SegmentSelection::Only(k) => *k == segment,
        }
    }

    fn check(&self, path: &LoopPath) -> Result<()> {
        match self {
            SegmentSelection::Only(k) if *k >= path.segments().len() => Err(GupError::IndexOutOfRange {
                name: "segment",
                value: *k,
                expected: "an existing loop segment",
            }),
            _ => Ok(()),
        }
    }
}

/// How the matrix-valued correction is reduced to a phase.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Projection {
    /// Sandwich the integrand at each node with the local on-shell spinor.
    #[default]
    ComovingOnShell,
    /// `Re <u|dPhi|u> / <u|u>` for a fixed spinor.
    FixedSpinor(Spinor4),
}

fn check_a(a: f64) -> Result<()> {
    if a >= 0.0 && a.is_finite() {
        Ok(())
    } else {
        Err(GupError::Domain(format!("GUP parameter a must be >= 0, got {a}")))
    }
}

fn scale_estimate<T: Copy + std::ops::Mul<f64, Output = T>>(
    est: QuadratureEstimate<T>,
    k: f64,
) -> QuadratureEstimate<T> {
    QuadratureEstimate {
        value: est.value * k,
        error_estimate: est.error_estimate * k.abs(),
        nodes_per_segment: est.nodes_per_segment,
    }
}

/// Fails if any sampled loop point lies on or inside the solenoid.
pub fn check_clearance(solenoid: &SolenoidSpec, path: &LoopPath) -> Result<()> {
    match path
        .sample_points(CLEARANCE_SAMPLES)
        .find(|&p| solenoid.axis.distance(p) <= solenoid.radius)
    {
        Some(p) => Err(GupError::Precondition(format!(
            "loop enters the solenoid (radius {}) at {p:?}",
            solenoid.radius
        ))),
        None => Ok(()),
    }
}

/// `q * loop-integral A . dr` for the solenoid potential. The loop must stay
/// outside the solenoid.
pub fn ab_phase(
    particle: &ParticleSpec,
    solenoid: &SolenoidSpec,
    path: &LoopPath,
    quad: &QuadratureSpec,
) -> Result<QuadratureEstimate<f64>> {
    check_clearance(solenoid, path)?;
    let integral = line_integral(solenoid, path, quad)?;
    Ok(scale_estimate(integral, particle.charge))
}

/// Contour integral without the `-a q` prefactor.
fn correction_integral<T, F>(
    particle: &ParticleSpec,
    path: &LoopPath,
    quad: &QuadratureSpec,
    selection: SegmentSelection,
    per_node: F,
) -> Result<QuadratureEstimate<T>>
where
    T: crate::field_geometry::Accumulate,
    F: Fn(FourVector) -> Result<T>,
{
    selection.check(path)?;
    let kin = kinematic_momentum(path, particle);
    let weight = particle.worldline_weight();
    integrate_loop(path, quad, |sample: &LoopSample| {
        if !selection.includes(sample.segment) {
            return Ok(T::zero());
        }
        let p0 = kin.along(sample.tangent);
        Ok(per_node(p0)? * (weight * sample.tangent.norm()))
    })
}

/// Matrix-valued GUP correction over the loop. Linear in `a`; zero at
/// `a = 0`. The quadrature tolerance applies to the `a`-independent
/// integral, the reported error is scaled by `|a q|`.
pub fn gup_phase_matrix(
    particle: &ParticleSpec,
    path: &LoopPath,
    a: f64,
    quad: &QuadratureSpec,
) -> Result<QuadratureEstimate<DiracMatrix>> {
    gup_phase_matrix_on(particle, path, a, quad, SegmentSelection::All)
}

pub fn gup_phase_matrix_on(
    particle: &ParticleSpec,
    path: &LoopPath,
    a: f64,
    quad: &QuadratureSpec,
    selection: SegmentSelection,
) -> Result<QuadratureEstimate<DiracMatrix>> {
    check_a(a)?;
    let integral = correction_integral(particle, path, quad, selection, |p0| Ok(slash(&p0)))?;
    if a == 0.0 {
        return Ok(QuadratureEstimate {
            value: DiracMatrix::zero(),
            error_estimate: 0.0,
            nodes_per_segment: integral.nodes_per_segment,
        });
    }
    Ok(scale_estimate(integral, -a * particle.charge))
}

/// Scalar GUP correction under the chosen projection.
pub fn gup_phase_projected(
    particle: &ParticleSpec,
    path: &LoopPath,
    a: f64,
    quad: &QuadratureSpec,
    projection: &Projection,
) -> Result<QuadratureEstimate<f64>> {
    gup_phase_projected_on(particle, path, a, quad, projection, SegmentSelection::All)
}

pub fn gup_phase_projected_on(
    particle: &ParticleSpec,
    path: &LoopPath,
    a: f64,
    quad: &QuadratureSpec,
    projection: &Projection,
    selection: SegmentSelection,
) -> Result<QuadratureEstimate<f64>> {
    check_a(a)?;
    let mass = particle.mass;
    let integral = match projection {
        Projection::ComovingOnShell => correction_integral(particle, path, quad, selection, |p0| {
            let u = on_shell_spinor(p0.spatial(), mass, SpinBranch::Particle1)?;
            Ok(sandwich(&slash(&p0), &u))
        })?,
        Projection::FixedSpinor(u) => {
            if u.norm_squared() == 0.0 {
                return Err(GupError::Domain("projection spinor must be nonzero".into()));
            }
            correction_integral(particle, path, quad, selection, |p0| Ok(sandwich(&slash(&p0), u)))?
        }
    };
    if a == 0.0 {
        return Ok(QuadratureEstimate {
            value: 0.0,
            error_estimate: 0.0,
            nodes_per_segment: integral.nodes_per_segment,
        });
    }
    Ok(scale_estimate(integral, -a * particle.charge))
}

/// `Re <u|M|u> / <u|u>`.
pub fn sandwich(matrix: &DiracMatrix, u: &Spinor4) -> f64 {
    matrix.expectation(u).re / u.norm_squared()
}

/// Comoving correction in closed form: `-a q m (E/v - p) L`.
pub fn comoving_closed_form(particle: &ParticleSpec, a: f64, loop_length: f64) -> f64 {
    -a * particle.charge * particle.mass * particle.worldline_weight() * loop_length
}

/// Standard phase, correction and their sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseResult {
    pub standard_phase: f64,
    pub correction_matrix: DiracMatrix,
    pub projected_correction: f64,
    pub total_phase: f64,
    pub quadrature_error: f64,
    pub a: f64,
}

pub fn total_phase(
    particle: &ParticleSpec,
    solenoid: &SolenoidSpec,
    path: &LoopPath,
    a: f64,
    quad: &QuadratureSpec,
    projection: &Projection,
) -> Result<PhaseResult> {
    let standard = ab_phase(particle, solenoid, path, quad)?;
    let matrix = gup_phase_matrix(particle, path, a, quad)?;
    let projected = gup_phase_projected(particle, path, a, quad, projection)?;
    Ok(PhaseResult {
        standard_phase: standard.value,
        correction_matrix: matrix.value,
        projected_correction: projected.value,
        total_phase: standard.value + projected.value,
        quadrature_error: standard
            .error_estimate
            .max(matrix.error_estimate)
            .max(projected.error_estimate),
        a,
    })
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PhaseResultWire {
    standard_phase: f64,
    projected_correction: f64,
    total_phase: f64,
    quadrature_error: f64,
    a: f64,
    correction_matrix: Vec<[f64; 2]>,
}

impl Serialize for PhaseResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PhaseResultWire {
            standard_phase: self.standard_phase,
            projected_correction: self.projected_correction,
            total_phase: self.total_phase,
            quadrature_error: self.quadrature_error,
            a: self.a,
            correction_matrix: self.correction_matrix.to_re_im_pairs(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PhaseResult {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = PhaseResultWire::deserialize(deserializer)?;
        let correction_matrix =
            DiracMatrix::from_re_im_pairs(&wire.correction_matrix).map_err(serde::de::Error::custom)?;
        Ok(PhaseResult {
            standard_phase: wire.standard_phase,
            correction_matrix,
            projected_correction: wire.projected_correction,
            total_phase: wire.total_phase,
            quadrature_error: wire.quadrature_error,
            a: wire.a,
        })
    }
}

/// Builds a spinor from `[re, im]` pairs.
pub fn spinor_from_pairs(pairs: &[[f64; 2]; 4]) -> Spinor4 {
    Spinor4::new(pairs.map(|[re, im]| Complex64::new(re, im)))
}
