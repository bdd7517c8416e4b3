use std::io::Write;

use gupab_core::phase_engine::{dispersion, total_phase, PhaseResult};
use gupab_core::Vector3;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{RunConfig, SweepParameter};
use crate::error::{CliError, CliResult};

pub const SWEEP_HEADER: &str = "value,a,standard_phase,projected_correction,total_phase,quadrature_error";
pub const DISPERSION_HEADER: &str = "p,e_plus_0,e_plus_a,shift";

pub fn cmd_phase(run: &RunConfig) -> CliResult<PhaseResult> {
    Ok(total_phase(
        &run.particle,
        &run.solenoid,
        &run.path,
        run.a,
        &run.quadrature,
        &run.projection,
    )?)
}

pub fn phase_json(result: &PhaseResult) -> String {
    let mut text = serde_json::to_string_pretty(result).expect("phase result serializes");
    text.push('\n');
    text
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub value: f64,
    pub a: f64,
    pub standard_phase: f64,
    pub projected_correction: f64,
    pub total_phase: f64,
    pub quadrature_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub parameter: SweepParameter,
    pub rows: Vec<SweepRow>,
}

/// Every sweep point is validated before the first evaluation. Points run in
/// parallel; rows keep input order.
pub fn cmd_sweep(run: &RunConfig) -> CliResult<SweepTable> {
    let parameter = run
        .raw
        .sweep
        .as_ref()
        .ok_or_else(|| CliError::Config("sweep section is missing".into()))?
        .parameter;
    let points = run.sweep_points()?;
    let rows = points
        .par_iter()
        .map(|(value, point)| {
            let r = cmd_phase(point)?;
            Ok(SweepRow {
                value: *value,
                a: r.a,
                standard_phase: r.standard_phase,
                projected_correction: r.projected_correction,
                total_phase: r.total_phase,
                quadrature_error: r.quadrature_error,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(SweepTable { parameter, rows })
}

fn write_rows<W: Write, R: Serialize>(out: W, rows: &[R]) -> CliResult<()> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn write_sweep_csv<W: Write>(out: W, table: &SweepTable) -> CliResult<()> {
    write_rows(out, &table.rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DispersionRow {
    pub p: f64,
    pub e_plus_0: f64,
    pub e_plus_a: f64,
    pub shift: f64,
}

/// Positive branch at `steps` evenly spaced `|p|` in `[p_min, p_max]`, with
/// momentum along `z`.
pub fn cmd_dispersion(run: &RunConfig, p_min: f64, p_max: f64, steps: usize) -> CliResult<Vec<DispersionRow>> {
    if steps < 2 {
        return Err(CliError::Config(format!("--steps must be >= 2, got {steps}")));
    }
    if !(p_min.is_finite() && p_max.is_finite() && p_min >= 0.0 && p_max > p_min) {
        return Err(CliError::Config(format!(
            "momentum range must satisfy 0 <= pmin < pmax, got [{p_min}, {p_max}]"
        )));
    }
    let m = run.particle.mass();
    (0..steps)
        .map(|k| {
            let p = p_min + (p_max - p_min) * k as f64 / (steps - 1) as f64;
            let p3 = Vector3::new(0.0, 0.0, p);
            let e0 = dispersion(p3, m, 0.0)?.e_plus;
            let ea = dispersion(p3, m, run.a)?.e_plus;
            Ok(DispersionRow {
                p,
                e_plus_0: e0,
                e_plus_a: ea,
                shift: ea - e0,
            })
        })
        .collect()
}

pub fn write_dispersion_csv<W: Write>(out: W, rows: &[DispersionRow]) -> CliResult<()> {
    write_rows(out, rows)
}
