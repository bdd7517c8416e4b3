use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use gupab::commands::{DISPERSION_HEADER, SWEEP_HEADER};
use gupab_core::phase_engine::PhaseResult;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn gupab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gupab")).args(args).output().unwrap()
}

fn stdout_of(args: &[&str]) -> String {
    let out = gupab(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn cfg(name: &str) -> String {
    data(name).to_str().unwrap().to_owned()
}

#[test]
fn phase_matches_golden_and_reparses() {
    for (config, gold) in [
        ("worked.json", "phase_worked.json"),
        ("rectangle_fixed.json", "phase_rectangle_fixed.json"),
    ] {
        let first = stdout_of(&["phase", "-c", &cfg(config)]);
        let second = stdout_of(&["phase", "-c", &cfg(config)]);
        assert_eq!(first, second);
        assert_eq!(first, golden(gold), "{config}");
        let parsed: PhaseResult = serde_json::from_str(&first).unwrap();
        assert_eq!(serde_json::to_string_pretty(&parsed).unwrap() + "\n", first);
    }
    let worked: PhaseResult = serde_json::from_str(&golden("phase_worked.json")).unwrap();
    assert!((worked.projected_correction + 0.083775804095727).abs() < 1e-12);
}

#[test]
fn sweep_matches_golden_and_keeps_order() {
    let dir = tempfile::tempdir().unwrap();
    for (config, gold) in [
        ("sweep_a.json", "sweep_a.csv"),
        ("sweep_radius.json", "sweep_radius.csv"),
    ] {
        let out = dir.path().join("out.csv");
        stdout_of(&["sweep", "-c", &cfg(config), "-o", out.to_str().unwrap()]);
        let first = std::fs::read_to_string(&out).unwrap();
        let second = stdout_of(&["sweep", "-c", &cfg(config)]);
        assert_eq!(first, second);
        assert_eq!(first, golden(gold), "{config}");
        assert_eq!(first.lines().next().unwrap(), SWEEP_HEADER);
    }
    let radii: Vec<f64> = golden("sweep_radius.csv")
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(radii, vec![3.0, 0.5, 1.0, 2.0]);
}

#[test]
fn dispersion_csv() {
    let text = stdout_of(&["dispersion", "-c", &cfg("worked.json"), "--pmax", "2", "--steps", "101"]);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), DISPERSION_HEADER);
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 101);
    for r in &rows {
        assert!((r[3] - 0.01 * r[0] * r[0]).abs() < 1e-12);
    }
    let out = gupab(&["dispersion", "-c", &cfg("worked.json"), "--pmax", "2", "--steps", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_errors_exit_2() {
    for (config, needle) in [
        ("bad_speed.json", "particle.v must be in (0,1)"),
        ("bad_loop.json", "loop"),
        ("unknown_key.json", "length"),
        ("missing.json", "cannot read"),
    ] {
        let out = gupab(&["phase", "-c", &cfg(config)]);
        assert_eq!(out.status.code(), Some(2), "{config}");
        assert!(out.stdout.is_empty());
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(needle), "{config}: {err}");
    }
    let out = gupab(&["sweep", "-c", &cfg("worked.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(gupab(&["phase"]).status.code(), Some(2));
}

#[test]
fn verify_fast_passes_and_fault_fails() {
    let out = gupab(&["verify", "--level", "fast"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["checks"].as_array().unwrap().len(), 3);

    let out = gupab(&["verify", "--level", "fast", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("clifford_relations"));
}
