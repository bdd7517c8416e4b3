//! Composite Gauss-Legendre quadrature over loop segments, with error
//! estimates from node doubling.

use std::collections::HashMap;
use std::num::NonZeroUsize;
use std::ops::{Add, Mul};
use std::sync::{Arc, Mutex, OnceLock};

use gauss_quad::legendre::GaussLegendre;
use serde::{Deserialize, Serialize};

use super::loops::LoopPath;
use super::VectorField;
use crate::clifford::DiracMatrix;
use crate::error::{GupError, Result};
use crate::vector::Vector3;

/// Largest per-segment rule used by doubling refinement.
pub const MAX_NODES_PER_SEGMENT: usize = 1 << 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Refinement {
    Fixed,
    DoublingUntilTolerance,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub nodes_per_segment: usize,
    pub refinement: Refinement,
    pub tolerance: f64,
}

impl QuadratureSpec {
    pub fn new(nodes_per_segment: usize, refinement: Refinement, tolerance: f64) -> Result<Self> {
        if nodes_per_segment < 4 {
            return Err(GupError::Domain(format!(
                "quadrature needs at least 4 nodes per segment, got {nodes_per_segment}"
            )));
        }
        if nodes_per_segment > MAX_NODES_PER_SEGMENT {
            return Err(GupError::Domain(format!(
                "quadrature is capped at {MAX_NODES_PER_SEGMENT} nodes per segment, got {nodes_per_segment}"
            )));
        }
        if !(tolerance > 0.0 && tolerance.is_finite()) {
            return Err(GupError::Domain(format!(
                "quadrature tolerance must be > 0, got {tolerance}"
            )));
        }
        Ok(Self {
            nodes_per_segment,
            refinement,
            tolerance,
        })
    }

    pub fn fixed(nodes_per_segment: usize) -> Result<Self> {
        Self::new(nodes_per_segment, Refinement::Fixed, 1e-10)
    }

    pub fn adaptive(nodes_per_segment: usize, tolerance: f64) -> Result<Self> {
        Self::new(nodes_per_segment, Refinement::DoublingUntilTolerance, tolerance)
    }
}

impl Default for QuadratureSpec {
    /// 16 nodes per segment, doubling until 1e-10.
    fn default() -> Self {
        Self::adaptive(16, 1e-10).expect("default quadrature is valid")
    }
}

/// A quadrature value with the magnitude of its change under node doubling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureEstimate<T> {
    pub value: T,
    pub error_estimate: f64,
    pub nodes_per_segment: usize,
}

/// Values that can be accumulated by the loop integrator.
pub trait Accumulate: Copy + Add<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn distance(&self, other: &Self) -> f64;
    fn is_finite(&self) -> bool;
}

impl Accumulate for f64 {
    fn zero() -> Self {
        0.0
    }
    fn distance(&self, other: &Self) -> f64 {
        (self - other).abs()
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
}

impl Accumulate for DiracMatrix {
    fn zero() -> Self {
        DiracMatrix::zero()
    }
    fn distance(&self, other: &Self) -> f64 {
        self.max_abs_diff(other)
    }
    fn is_finite(&self) -> bool {
        self.entries()
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

/// A point of the loop handed to integrands.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoopSample {
    pub segment: usize,
    pub s: f64,
    pub position: Vector3,
    /// `dr/ds`.
    pub tangent: Vector3,
}

type Rule = Arc<Vec<(f64, f64)>>;

/// Gauss-Legendre nodes and weights of order `n` mapped to `[0, 1]`.
pub fn unit_interval_rule(n: usize) -> Rule {
    static CACHE: OnceLock<Mutex<HashMap<usize, Rule>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let mut guard = cache.lock().expect("quadrature cache poisoned");
    guard
        .entry(n)
        .or_insert_with(|| {
            let degree = NonZeroUsize::new(n).expect("rule order is nonzero");
            let rule = GaussLegendre::new(degree);
            Arc::new(rule.iter().map(|(x, w)| (0.5 * (x + 1.0), 0.5 * w)).collect())
        })
        .clone()
}

fn integrate_fixed<T, F>(path: &LoopPath, n: usize, integrand: &F) -> Result<T>
where
    T: Accumulate,
    F: Fn(&LoopSample) -> Result<T>,
{
    let rule = unit_interval_rule(n);
    let mut total = T::zero();
    for (k, seg) in path.segments().iter().enumerate() {
        let mut partial = T::zero();
        for &(s, w) in rule.iter() {
            let sample = LoopSample {
                segment: k,
                s,
                position: seg.position(s),
                tangent: seg.tangent(s),
            };
            let value = integrand(&sample)?;
            if !value.is_finite() {
                return Err(GupError::NonFiniteSample { segment: k, s });
            }
            partial = partial + value * w;
        }
        total = total + partial;
    }
    Ok(total)
}

/// Integrates `integrand(sample) ds` over every segment of `path`.
///
/// The returned value uses twice the base node count and the error estimate
/// is its distance to the base-rule value. In doubling mode the base count
/// doubles until the estimate drops below the tolerance or the finer rule
/// reaches [`MAX_NODES_PER_SEGMENT`].
pub fn integrate_loop<T, F>(path: &LoopPath, quad: &QuadratureSpec, integrand: F) -> Result<QuadratureEstimate<T>>
where
    T: Accumulate,
    F: Fn(&LoopSample) -> Result<T>,
{
    let mut n = quad.nodes_per_segment.min(MAX_NODES_PER_SEGMENT / 2);
    let mut coarse = integrate_fixed(path, n, &integrand)?;
    loop {
        let fine = integrate_fixed(path, 2 * n, &integrand)?;
        let error_estimate = coarse.distance(&fine);
        let done = match quad.refinement {
            Refinement::Fixed => true,
            Refinement::DoublingUntilTolerance => error_estimate < quad.tolerance || 2 * n >= MAX_NODES_PER_SEGMENT,
        };
        if done {
            return Ok(QuadratureEstimate {
                value: fine,
                error_estimate,
                nodes_per_segment: 2 * n,
            });
        }
        coarse = fine;
        n *= 2;
    }
}

/// `integral of field(r) . dr` around the loop.
pub fn line_integral<A: VectorField + ?Sized>(
    field: &A,
    path: &LoopPath,
    quad: &QuadratureSpec,
) -> Result<QuadratureEstimate<f64>> {
    integrate_loop(path, quad, |sample| Ok(field.eval(sample.position).dot(sample.tangent)))
}

/// Arc length of the loop.
pub fn loop_length(path: &LoopPath, quad: &QuadratureSpec) -> Result<QuadratureEstimate<f64>> {
    integrate_loop(path, quad, |sample| Ok(sample.tangent.norm()))
}
