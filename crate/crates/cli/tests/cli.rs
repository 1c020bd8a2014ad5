use std::path::Path;
use std::process::{Command, Output};

use approx::assert_relative_eq;
use serde_json::Value;

fn nphoton(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nphoton"))
        .args(args)
        .env("NPHOTON_OUT_DIR", out)
        .output()
        .expect("binary runs")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn single_photon_width_is_sigma_g() {
    let dir = tempfile::tempdir().unwrap();
    let out = nphoton(
        dir.path(),
        &[
            "width",
            "--n",
            "1",
            "--B",
            "0",
            "--sigma-phi",
            "3.7e11",
            "--format",
            "json",
        ],
    );
    assert!(out.status.success());
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    let sigma_g = 1.0 / (2f64.sqrt() * 3.7e-4);
    assert_relative_eq!(
        report["sigma_q"].as_f64().unwrap(),
        sigma_g,
        max_relative = 1e-12
    );
    assert_eq!(report, json(&dir.path().join("width.json")));
}

#[test]
fn correlated_state_reports_sum_variable() {
    let dir = tempfile::tempdir().unwrap();
    let run = |state: &str| {
        let out = nphoton(
            dir.path(),
            &[
                "width",
                "--state",
                state,
                "--n",
                "40",
                "--path1",
                "silica:2cm",
                "--path2",
                "air:10m",
                "--sigma-phi",
                "3.7e11",
                "--format",
                "json",
            ],
        );
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        serde_json::from_slice::<Value>(&out.stdout).unwrap()
    };
    let anti = run("anti");
    let corr = run("corr");
    assert_eq!(anti["variable"], "difference");
    assert_eq!(corr["variable"], "sum");
    assert_eq!(anti["sigma_q"], corr["sigma_q"]);
}

#[test]
fn transition_width_ratio_near_root_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = nphoton(
        dir.path(),
        &[
            "width",
            "--sigma-phi",
            "3.7e11",
            "--n",
            "7305",
            "--B",
            "500",
            "--format",
            "json",
        ],
    );
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    let ratio = report["sigma_q"].as_f64().unwrap() / report["asymptote"].as_f64().unwrap();
    // N is an integer and N_t = 7304.6, so the ratio sits about 2e-5 off √2.
    assert!((ratio - 2f64.sqrt()).abs() < 1e-4, "{ratio}");
}

#[test]
fn conflicting_media_flags_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = nphoton(
        dir.path(),
        &[
            "width",
            "--n",
            "3",
            "--B",
            "5",
            "--path1",
            "silica:1cm",
            "--sigma-phi",
            "1e12",
        ],
    );
    assert_eq!(out.status.code(), Some(1));
    let out = nphoton(
        dir.path(),
        &[
            "width",
            "--n",
            "3",
            "--path1",
            "silica:1",
            "--sigma-phi",
            "1e12",
        ],
    );
    assert_eq!(out.status.code(), Some(1), "bare length must be rejected");
    let out = nphoton(
        dir.path(),
        &[
            "scan",
            "--n-min",
            "100",
            "--n-max",
            "10",
            "--B",
            "0",
            "--sigma-phi",
            "1e12",
        ],
    );
    assert_eq!(out.status.code(), Some(1));
    let out = nphoton(dir.path(), &["width", "--n", "3", "--sigma-phi", "1e12"]);
    assert_eq!(out.status.code(), Some(1), "missing media");
}

#[test]
fn domain_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = nphoton(
        dir.path(),
        &["transition", "--B", "0", "--sigma-phi", "3.7e11"],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("fully cancelled"));
    let out = nphoton(dir.path(), &["media", "--wavelength", "2000"]);
    assert_eq!(out.status.code(), Some(2));
    let out = nphoton(
        dir.path(),
        &[
            "width",
            "--n",
            "3",
            "--path1",
            "unobtainium:1cm",
            "--sigma-phi",
            "1e12",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn transition_presets() {
    let dir = tempfile::tempdir().unwrap();
    let out = nphoton(
        dir.path(),
        &["transition", "--preset", "ntrans-1cm", "--format", "json"],
    );
    assert!(out.status.success());
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    let nt = report["transition_n"].as_f64().unwrap();
    assert!((nt / 7.3e3 - 1.0).abs() < 0.02);

    let out = nphoton(
        dir.path(),
        &[
            "transition",
            "--B",
            "36523",
            "--sigma-phi",
            "3.7e11",
            "--format",
            "json",
        ],
    );
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_relative_eq!(
        report["transition_n"].as_f64().unwrap(),
        100.0,
        max_relative = 1e-3
    );
    assert_relative_eq!(
        report["silica_cm"].as_f64().unwrap(),
        146.092,
        max_relative = 1e-4
    );
}

#[test]
fn media_reports() {
    let dir = tempfile::tempdir().unwrap();
    let beta = |args: &[&str]| {
        let mut all = vec!["media", "--format", "json"];
        all.extend_from_slice(args);
        let out = nphoton(dir.path(), &all);
        assert!(out.status.success());
        serde_json::from_slice::<Value>(&out.stdout).unwrap()["beta"]
            .as_f64()
            .unwrap()
    };
    assert!((beta(&["--model", "edlen"]) / 0.106 - 1.0).abs() < 0.05);
    assert!((beta(&["--rh", "0.2"]) / 0.103 - 1.0).abs() < 0.05);
    assert_eq!(beta(&["--material", "silica"]), 250.0);
}

#[test]
fn tiny_budget_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let out = nphoton(
        dir.path(),
        &["verify", "--suite", "quadrature", "--max-points", "21"],
    );
    assert_eq!(out.status.code(), Some(3));
    let report = json(&dir.path().join("verify.json"));
    assert_eq!(report["pass"], false);
    assert!(report["cases"][0]["error"]
        .as_str()
        .unwrap()
        .contains("quadrature did not reach"));
}

#[test]
fn montecarlo_suite_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = [
        "verify",
        "--suite",
        "montecarlo",
        "--seed",
        "42",
        "--samples",
        "20000",
    ];
    assert!(nphoton(a.path(), &args).status.success());
    assert!(nphoton(b.path(), &args).status.success());
    assert_eq!(
        std::fs::read(a.path().join("verify.json")).unwrap(),
        std::fs::read(b.path().join("verify.json")).unwrap()
    );
}

#[test]
fn scan_csv_shape() {
    let dir = tempfile::tempdir().unwrap();
    let out = nphoton(
        dir.path(),
        &[
            "scan",
            "--n-min",
            "5",
            "--n-max",
            "5",
            "--B",
            "0",
            "--sigma-phi",
            "3.7e11",
        ],
    );
    assert!(out.status.success());
    let text = std::fs::read_to_string(dir.path().join("scan.csv")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "N,p_quantum,p_classical");
    assert_eq!(lines.len(), 2);
    let fields: Vec<f64> = lines[1].split(',').map(|f| f.parse().unwrap()).collect();
    assert_eq!(fields[0], 5.0);
    assert_relative_eq!(fields[1], 1.0 / (2f64.sqrt() * 5.0), max_relative = 1e-12);
    assert_relative_eq!(fields[2], 1.0 / 5f64.sqrt(), max_relative = 1e-12);
}

#[test]
fn surface_clip_only_changes_values_below_one() {
    let dir = tempfile::tempdir().unwrap();
    let common = [
        "surface",
        "--n-range",
        "1:100000",
        "--n-points",
        "11",
        "--x-range",
        "0:400",
        "--x-points",
        "5",
        "--sigma-phi",
        "3.7e11",
    ];
    let mut none = common.to_vec();
    none.extend(["--clip", "none"]);
    let mut unity = common.to_vec();
    unity.extend(["--clip", "unity"]);

    assert!(nphoton(dir.path(), &none).status.success());
    let raw = std::fs::read_to_string(dir.path().join("surface.csv")).unwrap();
    assert!(nphoton(dir.path(), &unity).status.success());
    let clipped = std::fs::read_to_string(dir.path().join("surface.csv")).unwrap();

    assert!(clipped.starts_with("N,x_cm,R,R_raw\n"));
    for (r, c) in raw.lines().skip(1).zip(clipped.lines().skip(1)) {
        let r: Vec<f64> = r.split(',').map(|f| f.parse().unwrap()).collect();
        let c: Vec<f64> = c.split(',').map(|f| f.parse().unwrap()).collect();
        assert_eq!(c[3], r[2]);
        if r[2] >= 1.0 {
            assert_eq!(c[2], r[2]);
        } else {
            assert_eq!(c[2], 1.0);
        }
        if r[1] == 0.0 {
            assert_relative_eq!(r[2], 1.0 / (2.0 * r[0]).sqrt(), max_relative = 1e-12);
        }
    }
}

#[test]
fn replay_reproduces_csv() {
    let first = tempfile::tempdir().unwrap();
    let second = tempfile::tempdir().unwrap();
    assert!(nphoton(first.path(), &["scan", "--preset", "fig2"])
        .status
        .success());
    let manifest_path = first.path().join("scan.manifest.json");
    let manifest = json(&manifest_path);
    assert_eq!(manifest["command"], "scan");
    assert_eq!(
        manifest["outputs"][0],
        first.path().join("scan.csv").display().to_string()
    );
    assert_eq!(manifest["parameters"]["sigma_phi"]["unit"], "rad/s");

    let out = nphoton(second.path(), &["replay", manifest_path.to_str().unwrap()]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(
        std::fs::read(first.path().join("scan.csv")).unwrap(),
        std::fs::read(second.path().join("scan.csv")).unwrap()
    );
    let replayed = json(&second.path().join("scan.manifest.json"));
    assert_eq!(replayed["parameters"], manifest["parameters"]);
    assert_eq!(replayed["argv"], manifest["argv"]);
}

#[test]
fn help_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = nphoton(dir.path(), &["--help"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("scan"));
}
