//! End-to-end tests of the command-line interface: exit codes, file
//! outputs, and report determinism.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_flag-orbit"))
}

#[test]
fn construct_writes_valid_datum() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("datum.json");
    let status = bin()
        .args(["construct", "--family", "A", "--p", "1", "--q", "2"])
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["schema"], "flag-orbit/1");
    assert_eq!(doc["family"], "A");
    assert_eq!(doc["matrix_dim"], 3);
    // H_Θ entries are [re, im] pairs
    assert_eq!(doc["h_theta"][0][0][0], 0.0);
}

#[test]
fn construct_rejects_bad_params_with_exit_2() {
    let status = bin()
        .args(["construct", "--family", "A", "--p", "3", "--q", "2"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
    let status = bin()
        .args(["construct", "--family", "D", "--l", "1"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn usage_error_for_unknown_flag() {
    let status = bin().args(["construct", "--nonsense"]).status().unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn verify_symplectic_suite_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let status = bin()
        .args([
            "verify", "--family", "A", "--p", "1", "--q", "2", "--suite", "symplectic",
            "--samples", "30", "--stable",
        ])
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc["schema"], "flag-orbit/1");
    assert!(doc["timing_seconds"].is_null());
    let checks = doc["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for c in checks {
        assert_eq!(c["status"], "pass", "{}", c["check_id"]);
    }
}

#[test]
fn verify_from_datum_file() {
    let dir = tempfile::tempdir().unwrap();
    let datum = dir.path().join("datum.json");
    let status = bin()
        .args(["construct", "--family", "C", "--l", "1"])
        .arg("--out")
        .arg(&datum)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let status = bin()
        .args(["verify", "--suite", "symmetric", "--samples", "20", "--stable"])
        .arg("--in")
        .arg(&datum)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
}

#[test]
fn verify_rejects_unreadable_datum() {
    let dir = tempfile::tempdir().unwrap();
    let datum = dir.path().join("garbage.json");
    std::fs::write(&datum, "{ not json").unwrap();
    let status = bin()
        .args(["verify", "--suite", "symmetric"])
        .arg("--in")
        .arg(&datum)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn verify_requires_a_datum_source() {
    let status = bin().args(["verify", "--suite", "algebra"]).status().unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn stable_reports_are_deterministic() {
    let run = || {
        let out = bin()
            .args([
                "verify", "--family", "C", "--l", "1", "--suite", "symmetric",
                "--samples", "15", "--seed", "11", "--stable",
            ])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        out.stdout
    };
    assert_eq!(run(), run());
}

#[test]
fn tolerance_env_override() {
    // an absurdly tight tolerance must make residual-gated checks fail
    let out = bin()
        .args([
            "verify", "--family", "C", "--l", "1", "--suite", "algebra",
            "--samples", "10", "--stable",
        ])
        .env("FLAG_ORBIT_TOL", "1e-30")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn toy_writes_figures() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("fig.svg");
    let csv = dir.path().join("fig.csv");
    let status = bin()
        .args(["toy", "--model", "sl2"])
        .arg("--svg")
        .arg(&svg)
        .arg("--csv")
        .arg(&csv)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let svg_text = std::fs::read_to_string(&svg).unwrap();
    assert!(svg_text.contains("width=\"800\" height=\"800\""));
    assert!(svg_text.contains("id=\"hyperbola\""));
    let csv_text = std::fs::read_to_string(&csv).unwrap();
    assert!(csv_text.contains("circle\nx,y,z\n"));
    // layer ids in the SVG match the CSV block names
    for name in ["circle", "hyperbola", "intersection"] {
        assert!(csv_text.contains(&format!("{name}\n")));
        assert!(svg_text.contains(&format!("id=\"{name}\"")));
    }
}

#[test]
fn toy_rejects_low_resolution() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("fig.svg");
    let status = bin()
        .args(["toy", "--model", "sl2", "--resolution", "8"])
        .arg("--svg")
        .arg(&svg)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn toy_su2_csv_locus() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("locus.csv");
    let status = bin()
        .args(["toy", "--model", "su2"])
        .arg("--csv")
        .arg(&csv)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.contains("locus_00\n"));
}
