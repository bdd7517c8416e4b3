//! Brute-force reference computations shared by the integration and
//! acceptance suites. Nothing here calls into the engine's quadrature,
//! gamma-matrix or spinor code.
#![allow(dead_code)]

use num_complex::Complex64;
use rand::{Rng, RngExt};

pub type Mat4 = [[Complex64; 4]; 4];

const O: Complex64 = Complex64::new(0.0, 0.0);
const P: Complex64 = Complex64::new(1.0, 0.0);
const M: Complex64 = Complex64::new(-1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);
const J: Complex64 = Complex64::new(0.0, -1.0);

/// Dirac-representation gamma matrices written out by hand.
pub fn gamma_literals() -> [Mat4; 4] {
    [
        [[P, O, O, O], [O, P, O, O], [O, O, M, O], [O, O, O, M]],
        [[O, O, O, P], [O, O, P, O], [O, M, O, O], [M, O, O, O]],
        [[O, O, O, J], [O, O, I, O], [O, I, O, O], [J, O, O, O]],
        [[O, O, P, O], [O, O, O, M], [M, O, O, O], [O, P, O, O]],
    ]
}

pub fn mat_mul(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = [[O; 4]; 4];
    for r in 0..4 {
        for c in 0..4 {
            for k in 0..4 {
                out[r][c] += a[r][k] * b[k][c];
            }
        }
    }
    out
}

/// `E gamma^0 - p . gamma` from the literal matrices.
pub fn slash_literal(e: f64, p: [f64; 3]) -> Mat4 {
    let g = gamma_literals();
    let mut out = [[O; 4]; 4];
    for r in 0..4 {
        for c in 0..4 {
            out[r][c] = g[0][r][c] * e - g[1][r][c] * p[0] - g[2][r][c] * p[1] - g[3][r][c] * p[2];
        }
    }
    out
}

/// Spin-up positive-energy spinor, unnormalized: `(1, 0, p_z, p_x + i p_y) / (E + m)`.
pub fn spin_up_spinor(e: f64, m: f64, p: [f64; 3]) -> [Complex64; 4] {
    let k = 1.0 / (e + m);
    [P, O, Complex64::new(p[2] * k, 0.0), Complex64::new(p[0] * k, p[1] * k)]
}

pub fn sandwich(mat: &Mat4, u: &[Complex64; 4]) -> f64 {
    let mut num = O;
    let mut den = 0.0;
    for r in 0..4 {
        let mut row = O;
        for c in 0..4 {
            row += mat[r][c] * u[c];
        }
        num += u[r].conj() * row;
        den += u[r].norm_sqr();
    }
    num.re / den
}

/// A parametrized closed curve `t in [0, 1)` with analytic derivative.
pub trait Curve {
    fn position(&self, t: f64) -> [f64; 3];
    fn derivative(&self, t: f64) -> [f64; 3];
}

pub struct CircleCurve {
    pub center: [f64; 3],
    pub radius: f64,
}

impl Curve for CircleCurve {
    fn position(&self, t: f64) -> [f64; 3] {
        let th = std::f64::consts::TAU * t;
        [
            self.center[0] + self.radius * th.cos(),
            self.center[1] + self.radius * th.sin(),
            self.center[2],
        ]
    }

    fn derivative(&self, t: f64) -> [f64; 3] {
        let th = std::f64::consts::TAU * t;
        let k = std::f64::consts::TAU * self.radius;
        [-k * th.sin(), k * th.cos(), 0.0]
    }
}

fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

/// Midpoint-rule evaluation of the GUP correction on `curve`, returning
/// `(comoving projected scalar, matrix)`.
pub fn riemann_gup_correction(curve: &dyn Curve, q: f64, m: f64, v: f64, a: f64, nodes: usize) -> (f64, Mat4) {
    let gamma = 1.0 / (1.0 - v * v).sqrt();
    let e = gamma * m;
    let p = gamma * m * v;
    let dt = 1.0 / nodes as f64;
    let mut scalar = 0.0;
    let mut matrix = [[O; 4]; 4];
    for k in 0..nodes {
        let t = (k as f64 + 0.5) * dt;
        let d = curve.derivative(t);
        let speed = norm3(d);
        let dir = [d[0] / speed, d[1] / speed, d[2] / speed];
        let p3 = [p * dir[0], p * dir[1], p * dir[2]];
        // p0 . dx/dt with dx0/dt = |dr/dt| / v
        let contraction = e * speed / v - (p3[0] * d[0] + p3[1] * d[1] + p3[2] * d[2]);
        let sl = slash_literal(e, p3);
        let u = spin_up_spinor(e, m, p3);
        scalar += sandwich(&sl, &u) * contraction * dt;
        for r in 0..4 {
            for c in 0..4 {
                matrix[r][c] += sl[r][c] * (contraction * dt);
            }
        }
    }
    let k = -a * q;
    for row in matrix.iter_mut() {
        for z in row.iter_mut() {
            *z *= k;
        }
    }
    (k * scalar, matrix)
}

/// Midpoint-rule arc length.
pub fn riemann_length(curve: &dyn Curve, nodes: usize) -> f64 {
    let dt = 1.0 / nodes as f64;
    (0..nodes)
        .map(|k| norm3(curve.derivative((k as f64 + 0.5) * dt)) * dt)
        .sum()
}

/// Chebyshev-free random star loop: `rho(t) = base + sum c_k cos(k t) + s_k sin(k t)`.
pub struct StarCurve {
    pub center: [f64; 3],
    pub base: f64,
    pub harmonics: Vec<(u32, f64, f64)>,
}

impl StarCurve {
    fn rho(&self, th: f64) -> (f64, f64) {
        self.harmonics.iter().fold((self.base, 0.0), |(r, dr), &(k, c, s)| {
            let kf = k as f64;
            (
                r + c * (kf * th).cos() + s * (kf * th).sin(),
                dr + kf * (s * (kf * th).cos() - c * (kf * th).sin()),
            )
        })
    }
}

impl Curve for StarCurve {
    fn position(&self, t: f64) -> [f64; 3] {
        let th = std::f64::consts::TAU * t;
        let (r, _) = self.rho(th);
        [
            self.center[0] + r * th.cos(),
            self.center[1] + r * th.sin(),
            self.center[2],
        ]
    }

    fn derivative(&self, t: f64) -> [f64; 3] {
        let tau = std::f64::consts::TAU;
        let th = tau * t;
        let (r, dr) = self.rho(th);
        [
            tau * (dr * th.cos() - r * th.sin()),
            tau * (dr * th.sin() + r * th.cos()),
            0.0,
        ]
    }
}

/// Random star-shaped loop centred near the origin with radius in
/// `[base - 0.5 base, base + 0.5 base]`.
pub fn random_star(rng: &mut impl Rng, base: f64) -> StarCurve {
    let count = rng.random_range(1..=4);
    let budget = 0.5 * base / count as f64;
    let harmonics = (0..count)
        .map(|_| {
            let k = rng.random_range(1..=6u32);
            (
                k,
                rng.random_range(-0.5..0.5) * budget,
                rng.random_range(-0.5..0.5) * budget,
            )
        })
        .collect();
    StarCurve {
        center: [
            rng.random_range(-0.1..0.1),
            rng.random_range(-0.1..0.1),
            rng.random_range(-1.0..1.0),
        ],
        base,
        harmonics,
    }
}

/// Random polynomial gauge function of total degree <= 3, returned as its
/// exact gradient.
pub fn random_polynomial_gradient(rng: &mut impl Rng) -> impl Fn([f64; 3]) -> [f64; 3] + Copy {
    // chi = sum c_{ijk} x^i y^j z^k with i + j + k <= 3
    let mut coeffs = [[[0.0; 4]; 4]; 4];
    for i in 0..4 {
        for j in 0..4 - i {
            for k in 0..4 - i - j {
                coeffs[i][j][k] = rng.random_range(-1.0..1.0);
            }
        }
    }
    move |p: [f64; 3]| {
        let pw = |x: f64, n: usize| if n == 0 { 1.0 } else { x.powi(n as i32) };
        let mut g = [0.0; 3];
        for i in 0..4 {
            for j in 0..4 - i {
                for k in 0..4 - i - j {
                    let c = coeffs[i][j][k];
                    if i > 0 {
                        g[0] += c * i as f64 * pw(p[0], i - 1) * pw(p[1], j) * pw(p[2], k);
                    }
                    if j > 0 {
                        g[1] += c * j as f64 * pw(p[0], i) * pw(p[1], j - 1) * pw(p[2], k);
                    }
                    if k > 0 {
                        g[2] += c * k as f64 * pw(p[0], i) * pw(p[1], j) * pw(p[2], k - 1);
                    }
                }
            }
        }
        g
    }
}

/// Ordinary least-squares slope of `ln y` on `ln x`.
pub fn fitted_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let (lx, ly): (Vec<f64>, Vec<f64>) = xs.iter().zip(ys).map(|(x, y)| (x.ln(), y.ln())).unzip();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let num: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    num / den
}

/// Analytic pieces of `dp_j/dp0_i` and of the target commutator, evaluated
/// from scratch.
pub fn scalar_commutator_defect(p0: [f64; 3], i: usize, j: usize, a: f64) -> f64 {
    let n = norm3(p0);
    let f = 1.0 - a * n + 2.0 * a * a * n * n;
    let d = if i == j { 1.0 } else { 0.0 };
    let jac = d * f + p0[j] * p0[i] * (-a / n + 4.0 * a * a);
    let p = [p0[0] * f, p0[1] * f, p0[2] * f];
    let pn = n * f;
    let target = d - a * (pn * d + p[i] * p[j] / pn) + a * a * (pn * pn * d + 3.0 * p[i] * p[j]);
    jac - target
}
