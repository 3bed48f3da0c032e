//! End-to-end tests of the `contact-angle` binary: flags, file formats,
//! exit codes, determinism.

use std::path::Path;
use std::process::{Command, Output};

const PI_OVER_3: &str = "1.0471975511965976";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_contact-angle"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn parse_csv(path: &Path) -> (String, Vec<Vec<String>>) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().to_string();
    let rows = lines
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    (header, rows)
}

fn col(rows: &[Vec<String>], idx: usize) -> Vec<f64> {
    rows.iter().map(|r| r[idx].parse().unwrap()).collect()
}

#[test]
fn list_shows_catalog() {
    let out = run(&["list"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("clifford-torus"));
    assert!(text.contains("geodesic-sphere"));
    assert!(text.contains("product-torus r:(0,π/2)"));
}

#[test]
fn sample_clifford_grid() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("clifford.csv");
    let out = run(&[
        "sample",
        "--surface",
        "clifford-torus",
        "--nu",
        "4",
        "--nv",
        "4",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let (header, rows) = parse_csv(&out_path);
    assert_eq!(
        header,
        "u,v,beta,beta1,beta2,H,K_ext,K_int,lap_beta,degenerate"
    );
    assert_eq!(rows.len(), 16);
    for beta in col(&rows, 2) {
        assert!(beta.abs() < 1e-12, "beta = {beta}");
    }
    for degenerate in &rows {
        assert_eq!(degenerate[9], "0");
    }
}

#[test]
fn sample_sphere_beta_is_arcsin_x2() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("sphere.csv");
    let out = run(&[
        "sample",
        "--surface",
        "geodesic-sphere",
        "--nu",
        "9",
        "--nv",
        "7",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let (_, rows) = parse_csv(&out_path);
    assert_eq!(rows.len(), 63);
    let us = col(&rows, 0);
    let betas = col(&rows, 2);
    for (theta, beta) in us.iter().zip(&betas) {
        // x2 = cos(theta) on this chart.
        let expected = theta.cos().asin();
        assert!(
            (beta - expected).abs() < 1e-10,
            "beta {beta} vs arcsin(x2) {expected}"
        );
    }
}

#[test]
fn sample_rejects_degenerate_grid_resolution() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("never.csv");
    let out = run(&[
        "sample",
        "--surface",
        "clifford-torus",
        "--nu",
        "1",
        "--nv",
        "4",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out_path.exists());
}

#[test]
fn unknown_surface_and_bad_params_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("never.csv");
    let out = run(&[
        "sample",
        "--surface",
        "moebius",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));

    // r outside (0, pi/2).
    let out = run(&[
        "sample",
        "--surface",
        "product-torus",
        "--param",
        "r=2.0",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));

    // Malformed NAME=VALUE.
    let out = run(&[
        "sample",
        "--surface",
        "product-torus",
        "--param",
        "r:0.5",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unwritable_output_is_an_io_error() {
    let out = run(&[
        "sample",
        "--surface",
        "clifford-torus",
        "--nu",
        "2",
        "--nv",
        "2",
        "--out",
        "/nonexistent-dir/never.csv",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn check_clifford_defaults_passes_with_small_residuals() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("clifford.json");
    let out = run(&[
        "check",
        "--surface",
        "clifford-torus",
        "--nu",
        "16",
        "--nv",
        "16",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["surface"], "clifford-torus");
    let reports = doc["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 7);
    for report in reports {
        let max_abs = report["max_abs"].as_f64().unwrap();
        assert!(max_abs < 1e-6, "{}: {max_abs:e}", report["kind"]);
    }
    assert_eq!(doc["verdicts"][0]["verdict"], "pass");
    // Timestamp is off by default.
    assert!(doc.get("timestamp").is_none());
}

#[test]
fn check_product_torus_fails_thresholds_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("product.json");
    let out = run(&[
        "check",
        "--surface",
        "product-torus",
        "--param",
        &format!("r={PI_OVER_3}"),
        "--nu",
        "12",
        "--nv",
        "12",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(doc["verdicts"][0]["is_minimal"], false);
    let minimality = doc["reports"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["kind"] == "minimality")
        .unwrap();
    assert!(minimality["max_abs"].as_f64().unwrap() > 0.1);
}

#[test]
fn check_product_torus_curvature_only_passes_but_flags_nonminimality() {
    // Hopf invariance makes beta vanish on every product torus, so the
    // curvature identity degenerates to K = 0 and holds; the report's
    // minimality context is what reveals the unmet hypothesis.
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("product-curv.json");
    let out = run(&[
        "check",
        "--surface",
        "product-torus",
        "--param",
        &format!("r={PI_OVER_3}"),
        "--nu",
        "8",
        "--nv",
        "8",
        "--identity",
        "curvature-formula",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    let report = &doc["reports"][0];
    assert!(report["max_abs"].as_f64().unwrap() < 1e-6);
    assert!(report["minimality_max_abs"].as_f64().unwrap() > 0.1);
}

#[test]
fn unknown_identity_is_a_usage_error_listing_names() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("never.json");
    let out = run(&[
        "check",
        "--surface",
        "clifford-torus",
        "--identity",
        "frobnication",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("tangency"));
    assert!(stderr.contains("laplacian-formula"));
}

#[test]
fn convergence_requires_three_decreasing_steps() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("never.csv");
    for steps in ["1e-3", "4e-3,2e-3", "1e-3,2e-3,4e-3"] {
        let out = run(&[
            "convergence",
            "--surface",
            "clifford-torus",
            "--steps",
            steps,
            "--out",
            out_path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(2), "steps = {steps}");
    }
}

#[test]
fn convergence_shows_second_order_decay_on_the_sphere() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("conv.csv");
    let out = run(&[
        "convergence",
        "--surface",
        "geodesic-sphere",
        "--nu",
        "8",
        "--nv",
        "8",
        "--identity",
        "laplacian-formula,connection-e2",
        "--steps",
        "4e-3,2e-3,1e-3",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let (header, rows) = parse_csv(&out_path);
    assert_eq!(header, "h,identity,max_abs");
    assert_eq!(rows.len(), 6);
    for kind in ["laplacian-formula", "connection-e2"] {
        let residuals: Vec<f64> = rows
            .iter()
            .filter(|r| r[1] == kind)
            .map(|r| r[2].parse().unwrap())
            .collect();
        assert_eq!(residuals.len(), 3);
        for pair in residuals.windows(2) {
            let ratio = pair[0] / pair[1];
            assert!(
                (3.5..=4.5).contains(&ratio),
                "{kind}: ratio {ratio}, residuals {residuals:?}"
            );
        }
    }
}

#[test]
fn convergence_on_clifford_laplacian_sits_at_the_rounding_floor() {
    // beta vanishes identically, so the residual is amplified rounding
    // noise rather than truncation; it must stay under the floor at the
    // default steps instead of showing a clean decay ratio.
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("conv-clifford.csv");
    let out = run(&[
        "convergence",
        "--surface",
        "clifford-torus",
        "--nu",
        "8",
        "--nv",
        "8",
        "--identity",
        "laplacian-formula",
        "--steps",
        "4e-3,2e-3,1e-3",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let (_, rows) = parse_csv(&out_path);
    for r in col(&rows, 2) {
        assert!(r < 1e-8, "residual {r:e} above the floor");
    }
}

#[test]
fn identical_configs_produce_byte_identical_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = run(&[
            "check",
            "--surface",
            "geodesic-sphere",
            "--nu",
            "10",
            "--nv",
            "10",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let c = dir.path().join("c.csv");
    let d = dir.path().join("d.csv");
    for path in [&c, &d] {
        let out = run(&[
            "sample",
            "--surface",
            "product-torus",
            "--param",
            "r=0.8",
            "--nu",
            "6",
            "--nv",
            "6",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    assert_eq!(std::fs::read(&c).unwrap(), std::fs::read(&d).unwrap());
}
