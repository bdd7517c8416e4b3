//! Energy eigenvalues of `H = alpha.p0 + a (alpha.p0)^2 + beta m`.

use nalgebra::SymmetricEigen;
use serde::{Deserialize, Serialize};

use crate::clifford::{alpha_dot, beta, DiracMatrix};
use crate::error::{GupError, Result};
use crate::vector::Vector3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Dispersion {
    /// `+sqrt(p^2 + m^2) + a p^2`.
    pub e_plus: f64,
    /// `-sqrt(p^2 + m^2) + a p^2`.
    pub e_minus: f64,
    /// Numerically diagonalized eigenvalues of the 4x4 Hamiltonian, ascending.
    pub eigenvalues: [f64; 4],
}

/// The 4x4 Hamiltonian, with `(alpha.p0)^2` formed as a matrix product.
pub fn dispersion_hamiltonian(p3: Vector3, m: f64, a: f64) -> DiracMatrix {
    let ap = alpha_dot(p3);
    ap + (ap * ap).scale(a) + beta().scale(m)
}

pub fn dispersion(p3: Vector3, m: f64, a: f64) -> Result<Dispersion> {
    if !(m > 0.0 && m.is_finite()) {
        return Err(GupError::Domain(format!("mass must be > 0, got {m}")));
    }
    if !(a >= 0.0 && a.is_finite()) {
        return Err(GupError::Domain(format!("GUP parameter a must be >= 0, got {a}")));
    }
    let p2 = p3.norm_squared();
    let root = (p2 + m * m).sqrt();
    let shift = a * p2;

    let h = dispersion_hamiltonian(p3, m, a).to_nalgebra();
    let eigen = SymmetricEigen::new(h);
    let mut eigenvalues = [0.0; 4];
    eigenvalues.copy_from_slice(eigen.eigenvalues.as_slice());
    eigenvalues.sort_by(f64::total_cmp);

    Ok(Dispersion {
        e_plus: root + shift,
        e_minus: -root + shift,
        eigenvalues,
    })
}
