mod oracles;

use std::f64::consts::TAU;

use gupab_core::clifford::{beta, on_shell_spinor, SpinBranch};
use gupab_core::field_geometry::{
    make_loop, winding_number, Axis, Harmonic, LoopPath, LoopSpec, QuadratureSpec, SolenoidSpec,
};
use gupab_core::phase_engine::{
    ab_phase, comoving_closed_form, dispersion, gup_phase_matrix, gup_phase_projected, total_phase, ParticleSpec,
    Projection,
};
use gupab_core::Vector3;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn quad() -> QuadratureSpec {
    QuadratureSpec::adaptive(16, 1e-12).unwrap()
}

fn star_spec(curve: &oracles::StarCurve) -> LoopSpec {
    LoopSpec::smooth(
        Vector3::from(curve.center),
        curve.base,
        curve
            .harmonics
            .iter()
            .map(|&(order, cos_amp, sin_amp)| Harmonic {
                order,
                cos_amp,
                sin_amp,
            })
            .collect(),
        1,
    )
}

fn relative(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn comoving_matches_closed_form() {
    let particle = ParticleSpec::new(1.0, 1.3, 0.45).unwrap();
    let a = 0.02;
    let comoving = |path: &LoopPath| {
        gup_phase_projected(&particle, path, a, &quad(), &Projection::ComovingOnShell)
            .unwrap()
            .value
    };
    for r in [0.5, 1.0, 2.5] {
        let path = make_loop(&LoopSpec::circle(Vector3::ZERO, r, 1)).unwrap();
        let expected = comoving_closed_form(&particle, a, TAU * r);
        assert!(relative(comoving(&path), expected) < 1e-10);
    }
    for (x0, x1, y0, y1) in [(-1.0, 1.0, -1.0, 1.0), (-0.5, 2.0, -3.0, 0.25)] {
        let path = make_loop(&LoopSpec::axis_rectangle(x0, x1, y0, y1, 0.0)).unwrap();
        let expected = comoving_closed_form(&particle, a, 2.0 * ((x1 - x0) + (y1 - y0)));
        assert!(relative(comoving(&path), expected) < 1e-10);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..20 {
        let curve = oracles::random_star(&mut rng, 2.0);
        let path = make_loop(&star_spec(&curve)).unwrap();
        let expected = comoving_closed_form(&particle, a, oracles::riemann_length(&curve, 20_000));
        let got = comoving(&path);
        assert!(relative(got, expected) < 1e-10, "{got} vs {expected}");
    }
}

#[test]
fn worked_value_against_riemann_oracle() {
    let particle = ParticleSpec::new(1.0, 1.0, 0.6).unwrap();
    let path = make_loop(&LoopSpec::circle(Vector3::ZERO, 1.0, 1)).unwrap();
    let got = gup_phase_projected(&particle, &path, 0.01, &quad(), &Projection::ComovingOnShell)
        .unwrap()
        .value;
    let curve = oracles::CircleCurve {
        center: [0.0; 3],
        radius: 1.0,
    };
    let (oracle, _) = oracles::riemann_gup_correction(&curve, 1.0, 1.0, 0.6, 0.01, 1_000_000);
    assert!((got - oracle).abs() < 1e-8, "{got} vs {oracle}");
    assert!((got + 0.083775804095727).abs() < 1e-12);
}

#[test]
fn matrix_matches_riemann_oracle_and_is_dirac_self_adjoint() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..5 {
        let curve = oracles::random_star(&mut rng, 1.5);
        let v = rng.random_range(0.1..0.9);
        let particle = ParticleSpec::new(-1.0, 0.8, v).unwrap();
        let path = make_loop(&star_spec(&curve)).unwrap();
        let m = gup_phase_matrix(&particle, &path, 0.03, &quad()).unwrap().value;
        let (_, oracle) = oracles::riemann_gup_correction(&curve, -1.0, 0.8, v, 0.03, 20_000);
        for r in 0..4 {
            for c in 0..4 {
                assert!((m.get(r, c) - oracle[r][c]).norm() < 1e-10);
            }
        }
        // slash(p) is self-adjoint under the Dirac conjugate
        assert!((beta() * m.dagger() * beta()).max_abs_diff(&m) < 1e-15 * m.max_abs().max(1.0));
    }
}

#[test]
fn out_and_back_matrix_cancels_spatial_part() {
    // on a line traversed both ways only the gamma0 block survives
    let a = Vector3::new(1.0, 0.0, 0.0);
    let b = Vector3::new(1.0, 2.0, 0.0);
    let path = make_loop(&LoopSpec::polyline(vec![a, b, Vector3::new(1.0, 1.0, 0.0)])).unwrap();
    let particle = ParticleSpec::new(1.0, 1.0, 0.5).unwrap();
    let m = gup_phase_matrix(&particle, &path, 0.1, &QuadratureSpec::fixed(32).unwrap())
        .unwrap()
        .value;
    let e = particle.energy();
    let expected = -0.1 * e * particle.worldline_weight() * 4.0;
    for r in 0..4 {
        for c in 0..4 {
            let beta = if r == c {
                if r < 2 {
                    1.0
                } else {
                    -1.0
                }
            } else {
                0.0
            };
            assert!(
                (m.get(r, c) - Complex64::new(expected * beta, 0.0)).norm() < 1e-12,
                "{r}{c}"
            );
        }
    }
}

#[test]
fn recovery_and_linearity() {
    let particle = ParticleSpec::new(1.0, 1.0, 0.6).unwrap();
    let solenoid = SolenoidSpec::new(1.0, 0.1).unwrap();
    let path = make_loop(&LoopSpec::circle(Vector3::ZERO, 2.0, 1)).unwrap();
    let zero = total_phase(&particle, &solenoid, &path, 0.0, &quad(), &Projection::ComovingOnShell).unwrap();
    assert_eq!(zero.projected_correction, 0.0);
    assert_eq!(zero.total_phase, zero.standard_phase);
    let fixed =
        Projection::FixedSpinor(on_shell_spinor(Vector3::new(0.0, 0.75, 0.0), 1.0, SpinBranch::Particle2).unwrap());
    for projection in [Projection::ComovingOnShell, fixed] {
        for a in [1e-6, 1e-3, 0.02, 0.2] {
            let one = gup_phase_projected(&particle, &path, a, &quad(), &projection)
                .unwrap()
                .value;
            let two = gup_phase_projected(&particle, &path, 2.0 * a, &quad(), &projection)
                .unwrap()
                .value;
            assert!((two / one - 2.0).abs() < 1e-14, "{}", two / one);
        }
    }
}

#[test]
fn flux_quantization_over_windings() {
    let particle = ParticleSpec::new(1.0, 1.0, 0.6).unwrap();
    let solenoid = SolenoidSpec::new(1.0, 0.1).unwrap();
    for w in [-2_i32, -1, 1, 2, 3] {
        let path = make_loop(&LoopSpec::circle(Vector3::ZERO, 2.0, w)).unwrap();
        assert_eq!(winding_number(&path, &Axis::z()).unwrap().winding, w as i64);
        let phi = ab_phase(&particle, &solenoid, &path, &quad()).unwrap().value;
        assert!((phi - w as f64).abs() < 1e-9, "w = {w}: {phi}");
    }
    let away = make_loop(&LoopSpec::circle(Vector3::new(5.0, 0.0, 0.0), 2.0, 1)).unwrap();
    assert_eq!(winding_number(&away, &Axis::z()).unwrap().winding, 0);
    assert!(ab_phase(&particle, &solenoid, &away, &quad()).unwrap().value.abs() < 1e-9);
    let inside = make_loop(&LoopSpec::circle(Vector3::ZERO, 0.05, 1)).unwrap();
    assert!(ab_phase(&particle, &solenoid, &inside, &quad()).is_err());
}

#[test]
fn reversal_flips_standard_keeps_correction() {
    let particle = ParticleSpec::new(1.0, 1.0, 0.6).unwrap();
    let solenoid = SolenoidSpec::new(0.8, 0.2).unwrap();
    let path = make_loop(&LoopSpec::axis_rectangle(-1.0, 2.0, -1.0, 1.0, 0.0)).unwrap();
    let q = QuadratureSpec::fixed(32).unwrap();
    let fwd = total_phase(&particle, &solenoid, &path, 0.05, &q, &Projection::ComovingOnShell).unwrap();
    let back = total_phase(
        &particle,
        &solenoid,
        &path.reversed(),
        0.05,
        &q,
        &Projection::ComovingOnShell,
    )
    .unwrap();
    assert!((fwd.standard_phase + back.standard_phase).abs() < 1e-14);
    assert!((fwd.projected_correction - back.projected_correction).abs() < 1e-14);
}

#[test]
fn dispersion_matches_eigenvalues_on_random_inputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..100 {
        let p3 = Vector3::new(
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
        );
        let m = rng.random_range(0.1..3.0);
        let a = rng.random_range(0.0..0.2);
        let d = dispersion(p3, m, a).unwrap();
        let p2 = p3.norm_squared();
        let e = (p2 + m * m).sqrt();
        assert!((d.e_plus - (e + a * p2)).abs() < 1e-12);
        assert!((d.e_minus - (-e + a * p2)).abs() < 1e-12);
        let ev = d.eigenvalues;
        for (k, target) in [d.e_minus, d.e_minus, d.e_plus, d.e_plus].into_iter().enumerate() {
            assert!((ev[k] - target).abs() < 1e-12, "{ev:?}");
        }
    }
}

proptest! {
    #[test]
    fn weight_identity(v in 0.01f64..0.99, m in 0.1f64..10.0) {
        let particle = ParticleSpec::new(1.0, m, v).unwrap();
        let gamma = particle.lorentz_factor();
        let rhs = m / (gamma * v);
        prop_assert!((particle.worldline_weight() - rhs).abs() <= 1e-12 * rhs.max(1.0));
    }
}
