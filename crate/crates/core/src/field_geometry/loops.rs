//! Closed piecewise-smooth contours with analytic tangents.

use std::f64::consts::{FRAC_PI_2, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{GupError, Result};
use crate::vector::Vector3;

/// Samples per segment used when validating tangents and geometry.
pub const VALIDATION_SAMPLES: usize = 64;
/// Closure and continuity tolerance relative to the loop diameter.
const CLOSURE_TOLERANCE: f64 = 1e-12;

/// One Fourier term `cos_amp cos(k theta) + sin_amp sin(k theta)` of a
/// star-shaped radius function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Harmonic {
    pub order: u32,
    #[serde(default)]
    pub cos_amp: f64,
    #[serde(default)]
    pub sin_amp: f64,
}

/// Geometry of one smooth piece, parametrized by `s` in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub enum SegmentShape {
    Line {
        start: Vector3,
        end: Vector3,
    },
    /// `center + radius (cos t u + sin t v)`, `t = theta0 + sweep s`.
    Arc {
        center: Vector3,
        radius: f64,
        u: Vector3,
        v: Vector3,
        theta0: f64,
        sweep: f64,
    },
    /// Star-shaped curve in the plane `z = center.z`:
    /// `center + rho(t) (cos t, sin t, 0)`, `t = turns * 2 pi s`,
    /// `rho(t) = base_radius + sum_k (c_k cos kt + s_k sin kt)`.
    Star {
        center: Vector3,
        base_radius: f64,
        harmonics: Vec<Harmonic>,
        turns: i32,
    },
}

impl SegmentShape {
    fn position(&self, s: f64) -> Vector3 {
        match self {
            SegmentShape::Line { start, end } => *start + (*end - *start) * s,
            SegmentShape::Arc {
                center,
                radius,
                u,
                v,
                theta0,
                sweep,
            } => {
                let t = theta0 + sweep * s;
                *center + (*u * t.cos() + *v * t.sin()) * *radius
            }
            SegmentShape::Star { center, turns, .. } => {
                let t = *turns as f64 * TAU * s;
                let rho = self.star_radius(t).0;
                *center + Vector3::new(t.cos(), t.sin(), 0.0) * rho
            }
        }
    }

    fn tangent(&self, s: f64) -> Vector3 {
        match self {
            SegmentShape::Line { start, end } => *end - *start,
            SegmentShape::Arc {
                radius,
                u,
                v,
                theta0,
                sweep,
                ..
            } => {
                let t = theta0 + sweep * s;
                (*v * t.cos() - *u * t.sin()) * (*radius * *sweep)
            }
            SegmentShape::Star { turns, .. } => {
                let dt_ds = *turns as f64 * TAU;
                let t = dt_ds * s;
                let (rho, drho) = self.star_radius(t);
                let (sin, cos) = t.sin_cos();
                Vector3::new(drho * cos - rho * sin, drho * sin + rho * cos, 0.0) * dt_ds
            }
        }
    }

    /// `(rho(t), rho'(t))` for a star segment.
    fn star_radius(&self, t: f64) -> (f64, f64) {
        let SegmentShape::Star {
            base_radius, harmonics, ..
        } = self
        else {
            unreachable!("star_radius on a non-star segment")
        };
        harmonics.iter().fold((*base_radius, 0.0), |(r, dr), h| {
            let k = h.order as f64;
            let (sin, cos) = (k * t).sin_cos();
            (
                r + h.cos_amp * cos + h.sin_amp * sin,
                dr + k * (h.sin_amp * cos - h.cos_amp * sin),
            )
        })
    }
}

/// A smooth piece of a loop, possibly traversed backwards.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    shape: SegmentShape,
    reversed: bool,
}

impl Segment {
    pub fn new(shape: SegmentShape) -> Self {
        Self { shape, reversed: false }
    }

    pub fn line(start: Vector3, end: Vector3) -> Self {
        Self::new(SegmentShape::Line { start, end })
    }

    pub fn shape(&self) -> &SegmentShape {
        &self.shape
    }

    pub fn is_reversed(&self) -> bool {
        self.reversed
    }

    pub fn position(&self, s: f64) -> Vector3 {
        if self.reversed {
            self.shape.position(1.0 - s)
        } else {
            self.shape.position(s)
        }
    }

    /// `dr/ds`.
    pub fn tangent(&self, s: f64) -> Vector3 {
        if self.reversed {
            -self.shape.tangent(1.0 - s)
        } else {
            self.shape.tangent(s)
        }
    }

    pub fn reversed(&self) -> Self {
        Self {
            shape: self.shape.clone(),
            reversed: !self.reversed,
        }
    }
}

/// Closed contour built from smooth segments joined end to start.
#[derive(Debug, Clone, PartialEq)]
pub struct LoopPath {
    segments: Vec<Segment>,
    diameter: f64,
}

impl LoopPath {
    /// Validates closure, continuity between consecutive segments and a
    /// finite nonvanishing tangent on a 64-point sample of every segment.
    pub fn new(segments: Vec<Segment>) -> Result<Self> {
        if segments.is_empty() {
            return Err(GupError::Geometry("a loop needs at least one segment".into()));
        }
        let mut lo = Vector3::new(f64::INFINITY, f64::INFINITY, f64::INFINITY);
        let mut hi = -lo;
        for (k, seg) in segments.iter().enumerate() {
            for j in 0..=VALIDATION_SAMPLES {
                let s = j as f64 / VALIDATION_SAMPLES as f64;
                let r = seg.position(s);
                let t = seg.tangent(s);
                if !r.is_finite() || !t.is_finite() {
                    return Err(GupError::Geometry(format!("segment {k} is not finite at s = {s}")));
                }
                if t.norm() == 0.0 {
                    return Err(GupError::Geometry(format!(
                        "segment {k} has a vanishing tangent at s = {s}"
                    )));
                }
                lo = Vector3::new(lo.x.min(r.x), lo.y.min(r.y), lo.z.min(r.z));
                hi = Vector3::new(hi.x.max(r.x), hi.y.max(r.y), hi.z.max(r.z));
            }
        }
        let diameter = (hi - lo).norm();
        if diameter == 0.0 {
            return Err(GupError::Geometry("loop is degenerate (zero extent)".into()));
        }
        let tol = CLOSURE_TOLERANCE * diameter;
        let n = segments.len();
        for k in 0..n {
            let end = segments[k].position(1.0);
            let next = segments[(k + 1) % n].position(0.0);
            if (end - next).norm() >= tol {
                let what = if k + 1 == n {
                    "loop is not closed"
                } else {
                    "segments are not joined"
                };
                return Err(GupError::Geometry(format!(
                    "{what}: end of segment {k} is {:e} from the start of segment {}",
                    (end - next).norm(),
                    (k + 1) % n
                )));
            }
        }
        Ok(Self { segments, diameter })
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Bounding-box diagonal of the validation sample.
    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    pub fn start(&self) -> Vector3 {
        self.segments[0].position(0.0)
    }

    /// The same contour traversed in the opposite direction.
    pub fn reversed(&self) -> Self {
        Self {
            segments: self.segments.iter().rev().map(Segment::reversed).collect(),
            diameter: self.diameter,
        }
    }

    /// Traverses `self`, then `other`. Both must start at the same point.
    pub fn concat(&self, other: &LoopPath) -> Result<Self> {
        let segments = self.segments.iter().chain(&other.segments).cloned().collect();
        Self::new(segments)
    }

    /// `per_segment + 1` evenly spaced points on every segment.
    pub fn sample_points(&self, per_segment: usize) -> impl Iterator<Item = Vector3> + '_ {
        self.segments
            .iter()
            .flat_map(move |seg| (0..=per_segment).map(move |j| seg.position(j as f64 / per_segment as f64)))
    }
}

/// Declarative loop description, as read from configuration files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case", deny_unknown_fields)]
pub enum LoopSpec {
    /// Circle in the plane `z = center.z`, counterclockwise about `+z` for
    /// positive `windings`.
    Circle(CircleParams),
    /// Four corners in traversal order.
    Rectangle(RectangleParams),
    /// Vertices in traversal order; the closing edge is implied.
    Polyline(PolylineParams),
    /// Star-shaped smooth curve about `center` in the plane `z = center.z`.
    Smooth(SmoothParams),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircleParams {
    #[serde(default)]
    pub center: Vector3,
    pub radius: f64,
    #[serde(default = "default_windings")]
    pub windings: i32,
}

fn default_windings() -> i32 {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RectangleParams {
    pub corners: [Vector3; 4],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolylineParams {
    pub vertices: Vec<Vector3>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SmoothParams {
    #[serde(default)]
    pub center: Vector3,
    pub base_radius: f64,
    #[serde(default)]
    pub harmonics: Vec<Harmonic>,
    #[serde(default = "default_windings")]
    pub turns: i32,
}

impl LoopSpec {
    pub fn circle(center: Vector3, radius: f64, windings: i32) -> Self {
        LoopSpec::Circle(CircleParams {
            center,
            radius,
            windings,
        })
    }

    /// Axis-aligned rectangle `[x0, x1] x [y0, y1]` at height `z`, traversed
    /// counterclockwise.
    pub fn axis_rectangle(x0: f64, x1: f64, y0: f64, y1: f64, z: f64) -> Self {
        LoopSpec::Rectangle(RectangleParams {
            corners: [
                Vector3::new(x0, y0, z),
                Vector3::new(x1, y0, z),
                Vector3::new(x1, y1, z),
                Vector3::new(x0, y1, z),
            ],
        })
    }

    pub fn polyline(vertices: Vec<Vector3>) -> Self {
        LoopSpec::Polyline(PolylineParams { vertices })
    }

    pub fn smooth(center: Vector3, base_radius: f64, harmonics: Vec<Harmonic>, turns: i32) -> Self {
        LoopSpec::Smooth(SmoothParams {
            center,
            base_radius,
            harmonics,
            turns,
        })
    }

    pub fn build(&self) -> Result<LoopPath> {
        make_loop(self)
    }
}

fn polygon(vertices: &[Vector3]) -> Result<LoopPath> {
    let n = vertices.len();
    let segments = (0..n)
        .map(|k| Segment::line(vertices[k], vertices[(k + 1) % n]))
        .collect();
    LoopPath::new(segments)
}

/// Builds a validated closed loop from its description.
pub fn make_loop(spec: &LoopSpec) -> Result<LoopPath> {
    match spec {
        LoopSpec::Circle(CircleParams {
            center,
            radius,
            windings,
        }) => {
            if !(*radius > 0.0 && radius.is_finite()) {
                return Err(GupError::Geometry(format!("circle radius must be > 0, got {radius}")));
            }
            if *windings == 0 {
                return Err(GupError::Geometry("circle windings must be nonzero".into()));
            }
            // one quarter arc per segment
            let sweep = FRAC_PI_2 * f64::from(windings.signum());
            let quarters = 4 * windings.unsigned_abs() as usize;
            let segments = (0..quarters)
                .map(|k| {
                    Segment::new(SegmentShape::Arc {
                        center: *center,
                        radius: *radius,
                        u: Vector3::X,
                        v: Vector3::Y,
                        theta0: sweep * (k % 4) as f64,
                        sweep,
                    })
                })
                .collect();
            LoopPath::new(segments)
        }
        LoopSpec::Rectangle(RectangleParams { corners }) => {
            let [c0, c1, c2, c3] = *corners;
            let side_a = c1 - c0;
            let side_b = c2 - c1;
            let scale = side_a.norm().max(side_b.norm());
            if side_a.norm() == 0.0 || side_b.norm() == 0.0 {
                return Err(GupError::Geometry("rectangle has a zero-length side".into()));
            }
            if side_a.dot(side_b).abs() > 1e-9 * scale * scale {
                return Err(GupError::Geometry("rectangle sides are not perpendicular".into()));
            }
            if (c3 - (c0 + side_b)).norm() > 1e-9 * scale {
                return Err(GupError::Geometry(
                    "rectangle corners are not planar or not a parallelogram".into(),
                ));
            }
            polygon(corners)
        }
        LoopSpec::Polyline(PolylineParams { vertices }) => {
            let mut vertices = vertices.clone();
            if vertices.len() > 1 && vertices.first() == vertices.last() {
                vertices.pop();
            }
            if vertices.len() < 3 {
                return Err(GupError::Geometry(format!(
                    "polyline needs at least 3 distinct vertices, got {}",
                    vertices.len()
                )));
            }
            let n = vertices.len();
            if let Some(k) = (0..n).find(|&k| vertices[k] == vertices[(k + 1) % n]) {
                return Err(GupError::Geometry(format!("polyline repeats vertex {k}")));
            }
            polygon(&vertices)
        }
        LoopSpec::Smooth(SmoothParams {
            center,
            base_radius,
            harmonics,
            turns,
        }) => {
            let spread: f64 = harmonics.iter().map(|h| h.cos_amp.abs() + h.sin_amp.abs()).sum();
            if !(*base_radius > spread && base_radius.is_finite()) {
                return Err(GupError::Geometry(format!(
                    "smooth loop radius {base_radius} must exceed the total harmonic amplitude {spread}"
                )));
            }
            if *turns == 0 {
                return Err(GupError::Geometry("smooth loop turns must be nonzero".into()));
            }
            if harmonics.iter().any(|h| h.order == 0) {
                return Err(GupError::Geometry("harmonic order must be >= 1".into()));
            }
            LoopPath::new(vec![Segment::new(SegmentShape::Star {
                center: *center,
                base_radius: *base_radius,
                harmonics: harmonics.clone(),
                turns: *turns,
            })])
        }
    }
}
