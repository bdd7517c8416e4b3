mod oracles;

use gupab_core::clifford::{
    alpha, alpha_dot, alphas, beta, gamma, gammas, metric, on_shell_spinor, slash, DiracMatrix, FourVector, SpinBranch,
};
use gupab_core::Vector3;
use nalgebra::SymmetricEigen;
use num_complex::Complex64;
use proptest::prelude::*;

#[test]
fn gammas_match_hand_written_literals() {
    for (mu, lit) in oracles::gamma_literals().iter().enumerate() {
        assert_eq!(gamma(mu).unwrap(), DiracMatrix::from_entries(*lit), "gamma^{mu}");
    }
}

#[test]
fn clifford_relations_are_exact() {
    let g = gammas();
    for mu in 0..4 {
        for nu in 0..4 {
            let expected = DiracMatrix::identity().scale(2.0 * metric(mu, nu));
            assert_eq!(g[mu].anticommutator(&g[nu]), expected, "mu={mu} nu={nu}");
        }
    }
    let a = alphas();
    for i in 0..3 {
        for j in 0..3 {
            let d = if i == j { 2.0 } else { 0.0 };
            assert_eq!(a[i].anticommutator(&a[j]), DiracMatrix::identity().scale(d));
        }
        assert_eq!(a[i].anticommutator(&beta()), DiracMatrix::zero());
    }
}

#[test]
fn alpha_anticommutator_by_direct_multiplication() {
    let lhs = oracles::mat_mul(alpha(1).unwrap().entries(), alpha(2).unwrap().entries());
    let rhs = oracles::mat_mul(alpha(2).unwrap().entries(), alpha(1).unwrap().entries());
    for r in 0..4 {
        for c in 0..4 {
            assert_eq!(lhs[r][c] + rhs[r][c], Complex64::new(0.0, 0.0));
        }
    }
}

#[test]
fn slash_square_of_worked_vector() {
    let p = FourVector::new(2.0, 1.0, 0.0, 0.0);
    let sq = oracles::mat_mul(slash(&p).entries(), slash(&p).entries());
    assert_eq!(DiracMatrix::from_entries(sq), DiracMatrix::identity().scale(3.0));
}

/// Eigenvectors of `alpha.p + beta m` with eigenvalue `+E` span the space
/// the positive-energy spinors must live in.
fn positive_energy_projector(p3: Vector3, m: f64) -> nalgebra::Matrix4<Complex64> {
    let h = (alpha_dot(p3) + beta().scale(m)).to_nalgebra();
    let eig = SymmetricEigen::new(h);
    let mut proj = nalgebra::Matrix4::<Complex64>::zeros();
    for k in 0..4 {
        if eig.eigenvalues[k] > 0.0 {
            let v = eig.eigenvectors.column(k);
            proj += v * v.adjoint();
        }
    }
    proj
}

fn assert_spinors_on_shell(p3: Vector3, m: f64) {
    let e = (p3.norm_squared() + m * m).sqrt();
    let proj = positive_energy_projector(p3, m);
    let u1 = on_shell_spinor(p3, m, SpinBranch::Particle1).unwrap();
    let u2 = on_shell_spinor(p3, m, SpinBranch::Particle2).unwrap();
    for u in [u1, u2] {
        assert!((u.norm_squared() - 1.0).abs() < 1e-14);
        let v = nalgebra::Vector4::from_column_slice(&u.components);
        assert!(
            (proj * v - v).norm() < 1e-12,
            "spinor outside positive-energy eigenspace"
        );
        let residual = slash(&FourVector::from_parts(e, p3))
            .apply(&u)
            .max_abs_diff(&u.scale(Complex64::new(m, 0.0)));
        assert!(residual < 1e-12 * m.max(1.0));
    }
    assert!(u1.inner(&u2).norm() < 1e-12);
}

#[test]
fn worked_spinor_along_z() {
    assert_spinors_on_shell(Vector3::new(0.0, 0.0, 0.75), 1.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn alpha_along_unit_vectors_squares_to_identity(theta in 0.0..std::f64::consts::PI, phi in 0.0..std::f64::consts::TAU) {
        let n = Vector3::new(theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos());
        let an = alpha_dot(n);
        prop_assert!((an * an).max_abs_diff(&DiracMatrix::identity()) < 1e-14);
    }

    #[test]
    fn slash_squares_to_minkowski_norm(t in -5.0..5.0f64, x in -5.0..5.0f64, y in -5.0..5.0f64, z in -5.0..5.0f64) {
        let p = FourVector::new(t, x, y, z);
        let s2 = t * t - x * x - y * y - z * z;
        prop_assert!((p.minkowski_square() - s2).abs() <= 1e-15 * (t * t + x * x + y * y + z * z));
        let sq = slash(&p) * slash(&p);
        let scale = (t * t + x * x + y * y + z * z).max(1e-300);
        prop_assert!(sq.max_abs_diff(&DiracMatrix::identity().scale(s2)) <= 1e-12 * scale);
    }

    #[test]
    fn on_shell_spinors_for_random_momenta(px in -3.0..3.0f64, py in -3.0..3.0f64, pz in -3.0..3.0f64, m in 0.05..3.0f64) {
        assert_spinors_on_shell(Vector3::new(px, py, pz), m);
    }
}
