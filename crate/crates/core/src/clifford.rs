//! Dirac matrices in the Dirac representation, Minkowski four-vectors and
//! positive-energy plane-wave spinors.
//!
//! Metric signature is (+, -, -, -) throughout.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GupError, Result};
use crate::vector::Vector3;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Dense 4x4 complex matrix acting on Dirac spinors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiracMatrix {
    entries: [[Complex64; 4]; 4],
}

impl DiracMatrix {
    pub const fn from_entries(entries: [[Complex64; 4]; 4]) -> Self {
        Self { entries }
    }

    pub const fn zero() -> Self {
        Self {
            entries: [[ZERO; 4]; 4],
        }
    }

    pub fn identity() -> Self {
        Self::diagonal([ONE; 4])
    }

    pub fn diagonal(d: [Complex64; 4]) -> Self {
        let mut m = Self::zero();
        for (k, value) in d.into_iter().enumerate() {
            m.entries[k][k] = value;
        }
        m
    }

    pub fn entries(&self) -> &[[Complex64; 4]; 4] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row][col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.entries[row][col] = value;
    }

    pub fn scale(&self, k: f64) -> Self {
        self.map(|z| z * k)
    }

    pub fn scale_complex(&self, k: Complex64) -> Self {
        self.map(|z| z * k)
    }

    fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        let mut out = *self;
        out.entries.iter_mut().flatten().for_each(|z| *z = f(*z));
        out
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let mut out = Self::zero();
        for r in 0..4 {
            for c in 0..4 {
                out.entries[c][r] = self.entries[r][c].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..4).map(|k| self.entries[k][k]).sum()
    }

    /// `{A, B} = AB + BA`.
    pub fn anticommutator(&self, other: &Self) -> Self {
        *self * *other + *other * *self
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entry modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    /// Largest entry modulus of `self - self^dagger`.
    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.dagger())
    }

    pub fn apply(&self, u: &Spinor4) -> Spinor4 {
        let mut out = [ZERO; 4];
        for (r, slot) in out.iter_mut().enumerate() {
            *slot = (0..4).map(|c| self.entries[r][c] * u.components[c]).sum();
        }
        Spinor4 { components: out }
    }

    /// `<u| M |u>`.
    pub fn expectation(&self, u: &Spinor4) -> Complex64 {
        u.inner(&self.apply(u))
    }

    /// Row-major `[re, im]` pairs, the wire layout used in JSON output.
    pub fn to_re_im_pairs(&self) -> Vec<[f64; 2]> {
        self.entries.iter().flatten().map(|z| [z.re, z.im]).collect()
    }

    pub fn from_re_im_pairs(pairs: &[[f64; 2]]) -> Result<Self> {
        if pairs.len() != 16 {
            return Err(GupError::Domain(format!(
                "a Dirac matrix needs 16 [re, im] pairs, got {}",
                pairs.len()
            )));
        }
        let mut m = Self::zero();
        for (k, [re, im]) in pairs.iter().enumerate() {
            m.entries[k / 4][k % 4] = Complex64::new(*re, *im);
        }
        Ok(m)
    }

    pub fn to_nalgebra(&self) -> nalgebra::Matrix4<Complex64> {
        nalgebra::Matrix4::from_fn(|r, c| self.entries[r][c])
    }
}

impl Default for DiracMatrix {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add for DiracMatrix {
    type Output = DiracMatrix;
    fn add(mut self, o: DiracMatrix) -> DiracMatrix {
        self += o;
        self
    }
}

impl AddAssign for DiracMatrix {
    fn add_assign(&mut self, o: DiracMatrix) {
        for (a, b) in self.entries.iter_mut().flatten().zip(o.entries.iter().flatten()) {
            *a += *b;
        }
    }
}

impl Sub for DiracMatrix {
    type Output = DiracMatrix;
    fn sub(self, o: DiracMatrix) -> DiracMatrix {
        self + (-o)
    }
}

impl Neg for DiracMatrix {
    type Output = DiracMatrix;
    fn neg(self) -> DiracMatrix {
        self.map(|z| -z)
    }
}

impl Mul for DiracMatrix {
    type Output = DiracMatrix;
    fn mul(self, o: DiracMatrix) -> DiracMatrix {
        let mut out = DiracMatrix::zero();
        for r in 0..4 {
            for c in 0..4 {
                out.entries[r][c] = (0..4).map(|k| self.entries[r][k] * o.entries[k][c]).sum();
            }
        }
        out
    }
}

impl Mul<f64> for DiracMatrix {
    type Output = DiracMatrix;
    fn mul(self, k: f64) -> DiracMatrix {
        self.scale(k)
    }
}

/// Pauli matrix sigma_i, i in 1..=3.
pub fn pauli(i: usize) -> Result<[[Complex64; 2]; 2]> {
    match i {
        1 => Ok([[ZERO, ONE], [ONE, ZERO]]),
        2 => Ok([[ZERO, -I], [I, ZERO]]),
        3 => Ok([[ONE, ZERO], [ZERO, -ONE]]),
        _ => Err(GupError::IndexOutOfRange {
            name: "i",
            value: i,
            expected: "1..=3",
        }),
    }
}

/// `alpha_i = [[0, sigma_i], [sigma_i, 0]]`.
pub fn alpha(i: usize) -> Result<DiracMatrix> {
    let s = pauli(i)?;
    let mut m = DiracMatrix::zero();
    for r in 0..2 {
        for c in 0..2 {
            m.entries[r][c + 2] = s[r][c];
            m.entries[r + 2][c] = s[r][c];
        }
    }
    Ok(m)
}

/// `beta = diag(1, 1, -1, -1)`.
pub fn beta() -> DiracMatrix {
    DiracMatrix::diagonal([ONE, ONE, -ONE, -ONE])
}

/// `gamma^0 = beta`, `gamma^i = beta alpha_i`.
pub fn gamma(mu: usize) -> Result<DiracMatrix> {
    match mu {
        0 => Ok(beta()),
        1..=3 => Ok(beta() * alpha(mu)?),
        _ => Err(GupError::IndexOutOfRange {
            name: "mu",
            value: mu,
            expected: "0..=3",
        }),
    }
}

/// The four gamma matrices, in order.
pub fn gammas() -> [DiracMatrix; 4] {
    [0, 1, 2, 3].map(|mu| gamma(mu).expect("mu in range"))
}

/// The three alpha matrices, in order.
pub fn alphas() -> [DiracMatrix; 3] {
    [1, 2, 3].map(|i| alpha(i).expect("i in range"))
}

/// Minkowski metric component eta^{mu nu}.
pub fn metric(mu: usize, nu: usize) -> f64 {
    match (mu, nu) {
        (0, 0) => 1.0,
        (a, b) if a == b => -1.0,
        _ => 0.0,
    }
}

/// `alpha . v` for a real 3-vector.
pub fn alpha_dot(v: Vector3) -> DiracMatrix {
    let [a1, a2, a3] = alphas();
    a1.scale(v.x) + a2.scale(v.y) + a3.scale(v.z)
}

/// Contravariant four-vector (t, x, y, z).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FourVector {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl FourVector {
    pub const fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        Self { t, x, y, z }
    }

    pub fn from_parts(t: f64, spatial: Vector3) -> Self {
        Self::new(t, spatial.x, spatial.y, spatial.z)
    }

    pub fn spatial(&self) -> Vector3 {
        Vector3::new(self.x, self.y, self.z)
    }

    /// Minkowski contraction `t1 t2 - x1.x2`.
    pub fn dot(&self, o: &FourVector) -> f64 {
        self.t * o.t - self.spatial().dot(o.spatial())
    }

    pub fn minkowski_square(&self) -> f64 {
        self.dot(self)
    }

    pub fn scale(&self, k: f64) -> Self {
        Self::new(self.t * k, self.x * k, self.y * k, self.z * k)
    }
}

impl Add for FourVector {
    type Output = FourVector;
    fn add(self, o: FourVector) -> FourVector {
        FourVector::new(self.t + o.t, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

/// `gamma^mu p_mu = p^t gamma^0 - p^x gamma^1 - p^y gamma^2 - p^z gamma^3`.
pub fn slash(p: &FourVector) -> DiracMatrix {
    let [g0, g1, g2, g3] = gammas();
    g0.scale(p.t) - g1.scale(p.x) - g2.scale(p.y) - g3.scale(p.z)
}

/// Four complex components of a Dirac spinor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor4 {
    pub components: [Complex64; 4],
}

impl Spinor4 {
    pub const fn new(components: [Complex64; 4]) -> Self {
        Self { components }
    }

    /// `<self|other>`, antilinear in `self`.
    pub fn inner(&self, other: &Spinor4) -> Complex64 {
        self.components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn norm_squared(&self) -> f64 {
        self.components.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn scale(&self, k: Complex64) -> Spinor4 {
        Spinor4::new(self.components.map(|z| z * k))
    }

    pub fn max_abs_diff(&self, other: &Spinor4) -> f64 {
        self.components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Which of the two spin states spanning the positive-energy eigenspace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpinBranch {
    Particle1,
    Particle2,
}

/// Unit-norm positive-energy spinor with `slash((E, p3)) u = m u`.
///
/// Upper two components are the spin state `chi`, lower two are
/// `sigma . p3 chi / (E + m)`.
pub fn on_shell_spinor(p3: Vector3, m: f64, branch: SpinBranch) -> Result<Spinor4> {
    if !(m > 0.0 && m.is_finite()) {
        return Err(GupError::Domain(format!("mass must be > 0, got {m}")));
    }
    let energy = (p3.norm_squared() + m * m).sqrt();
    let chi = match branch {
        SpinBranch::Particle1 => [ONE, ZERO],
        SpinBranch::Particle2 => [ZERO, ONE],
    };
    // sigma . p as a 2x2 block
    let sp = [
        [Complex64::new(p3.z, 0.0), Complex64::new(p3.x, -p3.y)],
        [Complex64::new(p3.x, p3.y), Complex64::new(-p3.z, 0.0)],
    ];
    let k = 1.0 / (energy + m);
    let lower0 = (sp[0][0] * chi[0] + sp[0][1] * chi[1]) * k;
    let lower1 = (sp[1][0] * chi[0] + sp[1][1] * chi[1]) * k;
    let u = Spinor4::new([chi[0], chi[1], lower0, lower1]);
    let norm = u.norm_squared().sqrt();
    Ok(u.scale(Complex64::new(1.0 / norm, 0.0)))
}
