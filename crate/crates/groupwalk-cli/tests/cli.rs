//! End-to-end checks of the command-line surface: report shapes, error
//! categories, determinism, and the reproduce presets.

use std::process::{Command, Output};

fn groupwalk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_groupwalk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(args: &[&str]) -> serde_json::Value {
    let out = groupwalk(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn error_category(args: &[&str]) -> (String, Option<i32>) {
    let out = groupwalk(args);
    assert!(!out.status.success(), "command {args:?} unexpectedly succeeded");
    let stderr = String::from_utf8_lossy(&out.stderr);
    let first = stderr.lines().next().unwrap_or_default();
    let token = first.split(':').next().unwrap_or_default().to_string();
    (token, out.status.code())
}

fn data(file: &str) -> String {
    format!("{}/tests/data/{file}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn hit_cycle_eight_matches_closed_form() {
    let v = stdout_json(&["hit", "--group", "cyclic:8", "--dist", "uniform-generators"]);
    let h: Vec<f64> = v["h"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    let expected = [0.0, 7.0, 12.0, 15.0, 16.0, 15.0, 12.0, 7.0];
    assert_eq!(h.len(), 8);
    for (got, want) in h.iter().zip(expected) {
        assert!((got - want).abs() < 1e-8, "{h:?}");
    }
    assert!((v["first_return"].as_f64().unwrap() - 8.0).abs() < 1e-8);
    assert_eq!(v["method"], "auto");
}

#[test]
fn hit_trivial_group() {
    let v = stdout_json(&["hit", "--group", "cyclic:1", "--dist", "uniform-generators"]);
    assert_eq!(v["h"].as_array().unwrap().len(), 1);
    assert_eq!(v["h"][0].as_f64().unwrap(), 0.0);
}

#[test]
fn hit_csv_output() {
    let out = groupwalk(&[
        "hit", "--group", "cyclic:4", "--dist", "uniform-generators", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("element,h"));
    assert_eq!(lines.count(), 4);
}

#[test]
fn hit_table_group_with_supplied_irreps() {
    let table = format!("table:{}", data("s3_table.json"));
    let dist = format!("file:{}", data("s3_transpositions.json"));
    let with_irreps = stdout_json(&[
        "hit", "--group", &table, "--dist", &dist, "--irreps", &data("s3_irreps.json"),
        "--method", "general",
    ]);
    let solved = stdout_json(&["hit", "--group", &table, "--dist", &dist, "--method", "solve"]);
    let a = with_irreps["h"].as_array().unwrap();
    let b = solved["h"].as_array().unwrap();
    for (x, y) in a.iter().zip(b) {
        assert!((x.as_f64().unwrap() - y.as_f64().unwrap()).abs() <= 1e-8);
    }
    assert!((with_irreps["first_return"].as_f64().unwrap() - 6.0).abs() < 1e-8);
}

#[test]
fn cover_report_shape() {
    let v = stdout_json(&[
        "cover",
        "--group",
        "hypercube:6",
        "--dist",
        "uniform-generators",
        "--estimators",
        "fernique,matthews,empirical",
        "--trials",
        "500",
        "--seed",
        "7",
        "--include-volume",
    ]);
    assert!(v["fernique"]["squared"].as_f64().unwrap() > 0.0);
    assert!(v["matthews"]["upper"].as_f64().unwrap() > v["matthews"]["lower"].as_f64().unwrap());
    assert!(v["empirical"]["mean"].as_f64().unwrap() > 0.0);
    assert!(v.get("gp").is_none());
    let volume = v["volume_growth"].as_array().unwrap();
    assert_eq!(volume.last().unwrap()[1], 64);
}

#[test]
fn cover_hypercube_eight_satisfies_envelope() {
    let v = stdout_json(&[
        "cover",
        "--group",
        "hypercube:8",
        "--dist",
        "uniform-generators",
        "--estimators",
        "fernique,matthews,empirical",
        "--trials",
        "5000",
        "--seed",
        "7",
    ]);
    let integral = v["fernique"]["integral"].as_f64().unwrap();
    let lower = v["matthews"]["lower"].as_f64().unwrap();
    let upper = v["matthews"]["upper"].as_f64().unwrap();
    assert!(integral <= upper.sqrt() * (1.0 + 1e-9));
    assert!(integral >= lower.sqrt() / 3.0 * 2f64.ln().sqrt() * (1.0 - 1e-9));
    let mean = v["empirical"]["mean"].as_f64().unwrap();
    assert!(mean > lower / 2.0 && mean < upper * 2.0, "empirical mean {mean}");
}

#[test]
fn cover_requires_seed_for_stochastic_estimators() {
    let (cat, code) = error_category(&[
        "cover", "--group", "cyclic:8", "--dist", "uniform-generators", "--estimators",
        "empirical",
    ]);
    assert_eq!(cat, "parse");
    assert_eq!(code, Some(1));
}

#[test]
fn volume_csv_matches_cycle_structure() {
    let out = groupwalk(&[
        "volume", "--group", "cyclic:12", "--dist", "uniform-generators", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "epsilon,volume");
    // 7 distinct distances on Z_12 (k = 0..6), counts 1,3,...,11,12
    assert_eq!(lines.len(), 8);
    assert!(lines[1].starts_with("0.0000000000000000e0,1"));
    assert!(lines[7].ends_with(",12"));
}

#[test]
fn simulate_is_deterministic_and_csv_has_one_row_per_trial() {
    let args = [
        "simulate", "--group", "cyclic:8", "--dist", "uniform-generators", "--trials", "64",
        "--seed", "3",
    ];
    let a = stdout_json(&args);
    let b = stdout_json(&args);
    assert_eq!(a, b);
    assert_eq!(a["trials"], 64);
    assert!(a["mean"].as_f64().unwrap() > 0.0);
    assert!(a.get("samples").is_none());

    let csv = groupwalk(&[
        "simulate", "--group", "cyclic:8", "--dist", "uniform-generators", "--trials", "16",
        "--seed", "3", "--format", "csv",
    ]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert_eq!(text.lines().count(), 17);

    let sampled = stdout_json(&[
        "simulate", "--group", "cyclic:8", "--dist", "uniform-generators", "--trials", "16",
        "--seed", "3", "--include-samples",
    ]);
    assert_eq!(sampled["samples"].as_array().unwrap().len(), 16);
}

#[test]
fn simulate_truncation_is_an_error_category() {
    let (cat, code) = error_category(&[
        "simulate", "--group", "cyclic:32", "--dist", "uniform-generators", "--trials", "4",
        "--seed", "1", "--step-cap", "3",
    ]);
    assert_eq!(cat, "truncated");
    assert_eq!(code, Some(5));
}

#[test]
fn error_categories_on_first_line() {
    let (cat, code) = error_category(&["hit", "--group", "ring:5", "--dist", "uniform-generators"]);
    assert_eq!((cat.as_str(), code), ("parse", Some(1)));

    let (cat, code) = error_category(&["hit", "--group", "cyclic:0", "--dist", "uniform-generators"]);
    assert_eq!((cat.as_str(), code), ("parse", Some(1)));

    // even-step walk on Z_6 is reducible
    let dist = format!("file:{}", data("reducible_z6.json"));
    let (cat, code) = error_category(&["hit", "--group", "cyclic:6", "--dist", &dist]);
    assert_eq!((cat.as_str(), code), ("reducible", Some(3)));

    // table with identity misplaced
    let (cat, code) = error_category(&[
        "hit", "--group", &format!("table:{}", data("bad_identity.json")), "--dist",
        "uniform-generators",
    ]);
    assert_eq!((cat.as_str(), code), ("validation", Some(2)));

    let (cat, _) = error_category(&["hit", "--group", "cyclic:8"]);
    assert_eq!(cat, "parse");
}

#[test]
fn validate_reports_group_and_irreps() {
    let v = stdout_json(&[
        "validate",
        "--group",
        &format!("table:{}", data("s3_table.json")),
        "--irreps",
        &data("s3_irreps.json"),
        "--dist",
        &format!("file:{}", data("s3_transpositions.json")),
    ]);
    assert_eq!(v["pass"], true);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["subject"] == "group" && c["name"] == "associativity"));
    assert!(checks.iter().any(|c| c["subject"] == "irreps" && c["name"] == "homomorphism"));
    assert!(checks.iter().all(|c| c["pass"] == true));
}

#[test]
fn validate_flags_bad_tables() {
    let out = groupwalk(&["validate", "--group", &format!("table:{}", data("loop5.json"))]);
    assert!(!out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], false);
    let assoc = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "associativity")
        .unwrap();
    assert_eq!(assoc["pass"], false);
    assert!(assoc["detail"].as_str().unwrap().contains("(gh)u"));
}

#[test]
fn reproduce_families_hold_their_bands() {
    let cycle = stdout_json(&["reproduce", "cycle"]);
    for r in cycle["doubling_ratios"].as_array().unwrap() {
        let ratio = r.as_f64().unwrap();
        assert!((3.0..=5.0).contains(&ratio), "cycle ratio {ratio}");
    }

    let cube = stdout_json(&["reproduce", "hypercube"]);
    assert!(cube["stability"].as_f64().unwrap() <= 2.0);
    for run in cube["runs"].as_array().unwrap() {
        let unit = run["h_unit"].as_f64().unwrap();
        let closed = run["h_unit_closed"].as_f64().unwrap();
        assert!((unit - closed).abs() <= 1e-8 * closed, "h(|x|=1) = {unit} vs {closed}");
    }

    let torus = stdout_json(&["reproduce", "torus"]);
    assert!(torus["stability"].as_f64().unwrap() <= 2.0);
    assert_eq!(torus["runs"].as_array().unwrap().len(), 3);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("groupwalk-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("hit.json");
    let out = groupwalk(&[
        "hit", "--group", "cyclic:5", "--dist", "uniform-generators", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["h"].as_array().unwrap().len(), 5);
    std::fs::remove_dir_all(&dir).unwrap();
}
