//! Run configuration: strict JSON schema, defaults and validation.

use std::path::Path;

use gupab_core::field_geometry::{
    make_loop, LoopPath, LoopSpec, QuadratureSpec, Refinement, SolenoidSpec, MAX_NODES_PER_SEGMENT,
};
use gupab_core::phase_engine::{check_clearance, spinor_from_pairs, ParticleSpec, Projection};
use gupab_core::units::{gup_from_a0, UnitMode, UnitSystem};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const DEFAULT_NODES: usize = 16;
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParticleConfig {
    pub q: f64,
    pub m: f64,
    pub v: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolenoidConfig {
    pub flux: f64,
    pub radius: f64,
}

/// Either `a` directly or `a0` with a unit system; `a0` in natural units is
/// `a` itself.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GupConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub units: Option<UnitMode>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureConfig {
    #[serde(default = "default_nodes")]
    pub nodes_per_segment: usize,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default = "default_refinement")]
    pub refinement: RefinementConfig,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            nodes_per_segment: DEFAULT_NODES,
            tolerance: DEFAULT_TOLERANCE,
            refinement: RefinementConfig::DoublingUntilTolerance,
        }
    }
}

fn default_nodes() -> usize {
    DEFAULT_NODES
}

fn default_tolerance() -> f64 {
    DEFAULT_TOLERANCE
}

fn default_refinement() -> RefinementConfig {
    RefinementConfig::DoublingUntilTolerance
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RefinementConfig {
    Fixed,
    DoublingUntilTolerance,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ProjectionConfig {
    #[default]
    ComovingOnShell,
    /// Spinor components as `[re, im]` pairs.
    FixedSpinor([[f64; 2]; 4]),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepParameter {
    #[serde(rename = "gup.a")]
    GupA,
    #[serde(rename = "loop.radius")]
    LoopRadius,
    #[serde(rename = "particle.v")]
    ParticleV,
    #[serde(rename = "solenoid.flux")]
    SolenoidFlux,
}

impl SweepParameter {
    pub fn name(&self) -> &'static str {
        match self {
            SweepParameter::GupA => "gup.a",
            SweepParameter::LoopRadius => "loop.radius",
            SweepParameter::ParticleV => "particle.v",
            SweepParameter::SolenoidFlux => "solenoid.flux",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
}

/// The configuration file as written.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub particle: ParticleConfig,
    pub solenoid: SolenoidConfig,
    #[serde(rename = "loop")]
    pub loop_spec: LoopSpec,
    pub gup: GupConfig,
    #[serde(default)]
    pub quadrature: QuadratureConfig,
    #[serde(default)]
    pub projection: ProjectionConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepConfig>,
}

impl RawConfig {
    /// Copy with one sweepable parameter replaced.
    pub fn with_parameter(&self, parameter: SweepParameter, value: f64) -> CliResult<RawConfig> {
        let mut out = self.clone();
        match parameter {
            SweepParameter::GupA => {
                out.gup = GupConfig {
                    a: Some(value),
                    a0: None,
                    units: None,
                };
            }
            SweepParameter::ParticleV => out.particle.v = value,
            SweepParameter::SolenoidFlux => out.solenoid.flux = value,
            SweepParameter::LoopRadius => match &mut out.loop_spec {
                LoopSpec::Circle(params) => params.radius = value,
                _ => {
                    return Err(CliError::Config(
                        "sweep over loop.radius requires loop.kind = \"circle\"".into(),
                    ))
                }
            },
        }
        Ok(out)
    }
}

/// A fully validated run, with engine objects already built.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub raw: RawConfig,
    pub particle: ParticleSpec,
    pub solenoid: SolenoidSpec,
    pub path: LoopPath,
    pub a: f64,
    pub quadrature: QuadratureSpec,
    pub projection: Projection,
}

fn config_error(field: &str, constraint: &str, value: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("{field} must be {constraint}, got {value}"))
}

fn require_finite(field: &str, x: f64) -> CliResult<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(config_error(field, "finite", x))
    }
}

fn require_positive(field: &str, x: f64) -> CliResult<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(config_error(field, "> 0", x))
    }
}

fn resolve_a(gup: &GupConfig) -> CliResult<f64> {
    let a = match (gup.a, gup.a0) {
        (Some(_), Some(_)) => return Err(CliError::Config("gup: give either a or a0, not both".into())),
        (None, None) => return Err(CliError::Config("gup: one of a or a0 is required".into())),
        (Some(a), None) => {
            if gup.units.is_some() {
                return Err(CliError::Config("gup.units only applies together with gup.a0".into()));
            }
            a
        }
        (None, Some(a0)) => match gup.units.unwrap_or(UnitMode::Natural) {
            UnitMode::Natural => {
                let a0_ok = a0.is_finite() && a0 >= 0.0;
                if !a0_ok {
                    return Err(config_error("gup.a0", ">= 0", a0));
                }
                gup_from_a0(a0, &UnitSystem::natural())
                    .map_err(|e| CliError::Config(format!("gup.a0: {e}")))?
                    .a
            }
            UnitMode::Si => {
                return Err(CliError::Config(
                    "gup.units = \"si\" is not accepted for runs: the engine works in natural units, \
                     give a0 with units \"natural\" or a directly"
                        .into(),
                ))
            }
        },
    };
    if a.is_finite() && a >= 0.0 {
        Ok(a)
    } else {
        Err(config_error("gup.a", ">= 0", a))
    }
}

impl RunConfig {
    pub fn from_raw(raw: RawConfig) -> CliResult<RunConfig> {
        let p = &raw.particle;
        require_finite("particle.q", p.q)?;
        require_positive("particle.m", p.m)?;
        if !(p.v > 0.0 && p.v < 1.0) {
            return Err(config_error("particle.v", "in (0,1)", p.v));
        }
        let particle = ParticleSpec::new(p.q, p.m, p.v).map_err(|e| CliError::Config(format!("particle: {e}")))?;

        require_finite("solenoid.flux", raw.solenoid.flux)?;
        require_positive("solenoid.radius", raw.solenoid.radius)?;
        let solenoid = SolenoidSpec::new(raw.solenoid.flux, raw.solenoid.radius)
            .map_err(|e| CliError::Config(format!("solenoid: {e}")))?;

        let path = make_loop(&raw.loop_spec).map_err(|e| CliError::Config(format!("loop: {e}")))?;
        check_clearance(&solenoid, &path).map_err(|e| CliError::Config(format!("loop: {e}")))?;

        let a = resolve_a(&raw.gup)?;

        let q = &raw.quadrature;
        if !(4..=MAX_NODES_PER_SEGMENT).contains(&q.nodes_per_segment) {
            return Err(config_error(
                "quadrature.nodes_per_segment",
                &format!("in [4, {MAX_NODES_PER_SEGMENT}]"),
                q.nodes_per_segment,
            ));
        }
        require_positive("quadrature.tolerance", q.tolerance)?;
        let refinement = match q.refinement {
            RefinementConfig::Fixed => Refinement::Fixed,
            RefinementConfig::DoublingUntilTolerance => Refinement::DoublingUntilTolerance,
        };
        let quadrature = QuadratureSpec::new(q.nodes_per_segment, refinement, q.tolerance)
            .map_err(|e| CliError::Config(format!("quadrature: {e}")))?;

        let projection = match &raw.projection {
            ProjectionConfig::ComovingOnShell => Projection::ComovingOnShell,
            ProjectionConfig::FixedSpinor(pairs) => {
                if pairs.iter().flatten().any(|x| !x.is_finite()) {
                    return Err(CliError::Config(
                        "projection.fixed_spinor entries must be finite".into(),
                    ));
                }
                let u = spinor_from_pairs(pairs);
                if u.norm_squared() == 0.0 {
                    return Err(CliError::Config("projection.fixed_spinor must be nonzero".into()));
                }
                Projection::FixedSpinor(u)
            }
        };

        if let Some(sweep) = &raw.sweep {
            if sweep.values.is_empty() {
                return Err(CliError::Config("sweep.values must be non-empty".into()));
            }
        }

        Ok(RunConfig {
            raw,
            particle,
            solenoid,
            path,
            a,
            quadrature,
            projection,
        })
    }

    /// Validated configurations for every sweep value, in input order.
    pub fn sweep_points(&self) -> CliResult<Vec<(f64, RunConfig)>> {
        let sweep = self
            .raw
            .sweep
            .as_ref()
            .ok_or_else(|| CliError::Config("sweep section is missing".into()))?;
        sweep
            .values
            .iter()
            .map(|&value| {
                let raw = self.raw.with_parameter(sweep.parameter, value)?;
                let run = RunConfig::from_raw(raw).map_err(|e| match e {
                    CliError::Config(msg) => {
                        CliError::Config(format!("sweep {} = {value}: {msg}", sweep.parameter.name()))
                    }
                    other => other,
                })?;
                Ok((value, run))
            })
            .collect()
    }
}

pub fn parse_config(text: &str) -> CliResult<RunConfig> {
    let raw: RawConfig = serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
    RunConfig::from_raw(raw)
}

pub fn load_config(path: &Path) -> CliResult<RunConfig> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text).map_err(|e| match e {
        CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
        other => other,
    })
}
