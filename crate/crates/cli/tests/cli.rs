use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multimat")).args(args).output().expect("binary runs")
}

fn run_fixture(cmd: &str, name: &str, extra: &[&str]) -> Output {
    let path = fixture(name);
    let mut args = vec![cmd, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn y_calibration_holds() {
    let out = run_fixture("verify-calibration", "y_steiner.json", &[]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["verdict"], Value::Bool(true));
}

#[test]
fn rotated_square_fails_with_sqrt3_witness() {
    let out = run_fixture("verify-calibration", "square_rotated.json", &[]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("1.732050807569"), "{err}");
    let w = &stdout_json(&out)["edge_witness"];
    let pairing = w["pairing"].as_f64().unwrap().abs();
    assert!((pairing - 3f64.sqrt()).abs() < 1e-9);
}

#[test]
fn missing_file_is_an_input_error() {
    let out = run(&["solve", "missing.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_json_reports_a_position() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, "{\n  \"version\": 1,\n  \"dim\": [\n}").unwrap();
    let out = run(&["energy", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));
}

#[test]
fn oversized_grid_is_a_resource_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("grid.json");
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(fixture("grid_two_units.json")).unwrap()).unwrap();
    doc["grid"]["nx"] = Value::from(8);
    std::fs::write(&p, doc.to_string()).unwrap();
    let out = run(&["oracle", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn every_fixture_passes_its_subcommand() {
    let cases = [
        ("verify-calibration", "y_steiner.json"),
        ("verify-calibration", "bprime.json"),
        ("verify-calibration", "mailing_l2.json"),
        ("verify-calibration", "irrigation_quarter.json"),
        ("verify-calibration", "irrigation_half.json"),
        ("check-cost", "y_steiner.json"),
        ("build-norm", "hexagon_ball.json"),
        ("energy", "cycle_triangle.json"),
        ("lift", "y_material.json"),
        ("project", "y_steiner.json"),
        ("mass", "y_steiner.json"),
        ("oracle", "grid_two_units.json"),
        ("solve", "y_steiner.json"),
        ("solve", "irrigation_half.json"),
    ];
    for (cmd, name) in cases {
        let out = run_fixture(cmd, name, &[]);
        assert_eq!(out.status.code(), Some(0), "{cmd} {name}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(out.stderr.is_empty(), "{cmd} {name} warned: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn solve_finds_the_y_junction() {
    let out = run_fixture("solve", "y_steiner.json", &[]);
    let v = stdout_json(&out);
    let e = v["energy"].as_f64().unwrap();
    assert!((e - (2.0 + 3f64.sqrt())).abs() < 1e-8, "{e}");
    let s = &v["steiner_points"][0];
    assert!((s[0].as_f64().unwrap() - (2.0 - 1.0 / 3f64.sqrt())).abs() < 1e-6);
}

#[test]
fn lift_then_mass_matches_energy() {
    let dir = tempfile::tempdir().unwrap();
    let lifted = dir.path().join("lifted.json");
    let out = run_fixture("lift", "y_material.json", &["-o", lifted.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let m = stdout_json(&run(&["mass", lifted.to_str().unwrap()]))["mass"].as_f64().unwrap();
    let e = stdout_json(&run_fixture("energy", "y_material.json", &[]))["energy"].as_f64().unwrap();
    assert!((m - e).abs() < 1e-9, "{m} vs {e}");

    // The written document is canonical: projecting and lifting again
    // reproduces it byte for byte.
    let projected = dir.path().join("projected.json");
    let again = dir.path().join("again.json");
    run(&["project", lifted.to_str().unwrap(), "-o", projected.to_str().unwrap()]);
    run(&["lift", projected.to_str().unwrap(), "-o", again.to_str().unwrap()]);
    assert_eq!(std::fs::read(&lifted).unwrap(), std::fs::read(&again).unwrap());
}

#[test]
fn render_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    for p in [&a, &b] {
        let out = run_fixture("render", "y_steiner.json", &["-o", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    let svg = std::fs::read_to_string(&a).unwrap();
    assert_eq!(svg, std::fs::read_to_string(&b).unwrap());
    assert_eq!(svg.matches("class=\"edge\"").count(), 3);
    for label in [">(1,1)<", ">(1,0)<", ">(0,1)<"] {
        assert!(svg.contains(label), "{label}");
    }
    let ball = dir.path().join("ball.svg");
    run_fixture("render", "hexagon_ball.json", &["-o", ball.to_str().unwrap()]);
    assert!(std::fs::read_to_string(&ball).unwrap().contains("class=\"ball\""));
}

#[test]
fn render_without_output_is_an_input_error() {
    assert_eq!(run_fixture("render", "y_steiner.json", &[]).status.code(), Some(2));
}
