use std::path::Path;
use std::process::{Command, Output};

use ringrep::{EstimatorRegistry, Query, RunConfig};
use ring_codes::RingCodeSpec;

fn ringrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ringrep")).args(args).env_remove("RINGREP_OUT_DIR").output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = ringrep(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

#[test]
fn csv_headers_match_golden_files() {
    let cases: [(&str, &[&str]); 6] = [
        ("fusion_success.header", &["fusion-success", "--depth", "1", "--steps", "2"]),
        ("pauli_stats.header", &["pauli-stats", "--eta-grid", "1", "--lambda-grid", "0"]),
        ("ft_fusion.header", &["ft-fusion", "--eta-grid", "1", "--lambda-grid", "0"]),
        ("optimize.header", &["optimize", "--l-grid", "10", "--n-max", "1"]),
        ("simulate.header", &["simulate", "--trials", "10", "--format", "csv"]),
        ("estimate.header", &["estimate", "--format", "csv"]),
    ];
    for (file, args) in cases {
        let text = stdout(args);
        assert_eq!(text.lines().next().unwrap(), golden(file).trim_end(), "{file}");
        assert!(!text.contains('\r'));
    }
}

#[test]
fn resources_json_matches_golden_file() {
    assert_eq!(stdout(&["resources"]), golden("resources_n4_d2.json"));
    let v = json(&["resources", "--depth", "3"]);
    assert_eq!(v["counts"], serde_json::json!({ "cz": 57, "measurements": 21, "photons": 64 }));
    let v = json(&["resources", "--depth", "1"]);
    assert_eq!(v["counts"], serde_json::json!({ "cz": 2, "measurements": 1, "photons": 4 }));
    let v = json(&["resources", "--sequence"]);
    assert_eq!(v["ops"].as_array().unwrap().len(), v["sequence"]["ops"].as_u64().unwrap() as usize);
}

#[test]
fn fusion_success_table() {
    let text = stdout(&["fusion-success", "--depth", "5", "--steps", "100"]);
    let rows: Vec<Vec<f64>> =
        text.lines().skip(1).map(|l| l.split(',').map(|c| c.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 500);
    let at = |d: f64, eta: f64| rows.iter().find(|r| r[0] == d && r[1] == eta).unwrap().clone();
    assert_eq!(at(1.0, 1.0)[3], 0.9375);
    assert_eq!(at(1.0, 1.0)[8], 0.5);
    assert_eq!(at(1.0, 0.0)[3], 0.0);
    let json = json(&["fusion-success", "--depth", "1", "--steps", "2", "--format", "json"]);
    let keys: Vec<&String> = json[0].as_object().unwrap().keys().collect();
    assert_eq!(keys.iter().map(|k| k.as_str()).collect::<Vec<_>>().join(","), golden("fusion_success.header").trim_end());
}

#[test]
fn pauli_and_ft_rows() {
    let text = stdout(&["pauli-stats", "--eta-grid", "1", "--lambda-grid", "0.15,0"]);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    let first: Vec<f64> = rows[0].split(',').map(|c| c.parse().unwrap()).collect();
    assert!((first[4] - 0.0324).abs() < 1e-12 && (first[5] - 0.2952).abs() < 1e-12);
    let clean: Vec<f64> = rows[1].split(',').map(|c| c.parse().unwrap()).collect();
    assert_eq!((clean[4], clean[5], clean[6]), (0.0, 0.0, 1.0));
    let ft = stdout(&["ft-fusion", "--depth", "8", "--switch-layer", "3", "--eta-grid", "0.9:1:3", "--lambda-grid", "0:0.02:5"]);
    assert_eq!(ft.lines().count(), 1 + 15);
}

#[test]
fn simulate_reports_reference_and_sigma() {
    let args = ["simulate", "--trials", "40000", "--seed", "9", "--depth", "1", "--eta", "1"];
    let v = json(&args);
    assert_eq!(v["reference"]["transmitted"], 0.9375);
    let z = v["comparison"][0]["sigma"].as_f64().unwrap();
    assert!(z.abs() < 3.0, "{z}");
    // Same seed, byte-identical output, also across worker counts.
    assert_eq!(stdout(&args), stdout(&args));
    let mut threaded = args.to_vec();
    threaded.extend(["--threads", "2"]);
    assert_eq!(stdout(&args), stdout(&threaded));
    let exact = json(&["simulate", "--trials", "2000", "--depth", "2", "--eta", "0.9", "--estimator", "exact"]);
    assert_eq!(exact["reference"]["estimator"], "exact");
}

#[test]
fn exit_codes() {
    assert_eq!(ringrep(&["simulate", "--trials", "0"]).status.code(), Some(2));
    assert_eq!(ringrep(&["simulate", "--eta", "1.5", "--trials", "5"]).status.code(), Some(2));
    assert_eq!(ringrep(&["simulate", "--depth", "6", "--trials", "5"]).status.code(), Some(3));
    assert_eq!(ringrep(&["simulate", "--estimator", "magic", "--trials", "5"]).status.code(), Some(2));
    assert_eq!(ringrep(&["optimize", "--l-grid", ""]).status.code(), Some(2));
    assert_eq!(ringrep(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(ringrep(&["fusion-success", "--n", "5"]).status.code(), Some(2));
    assert_eq!(ringrep(&["resources", "--out", "/proc/forbidden/x.json"]).status.code(), Some(1));
}

#[test]
fn config_files_fill_unset_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(
        &cfg,
        r#"{"version": 1, "format": "json", "simulate": {"trials": 500, "eta": 0.9, "depth": 1}, "seed": 3}"#,
    )
    .unwrap();
    let c = cfg.to_str().unwrap();
    let v = json(&["simulate", "--config", c]);
    assert_eq!(v["stats"]["trials"], 500);
    assert_eq!(v["stats"]["seed"], 3);
    let v = json(&["simulate", "--config", c, "--trials", "700", "--seed", "4"]);
    assert_eq!(v["stats"]["trials"], 700);
    assert_eq!(v["stats"]["eta"], 0.9);
    assert_eq!(v["stats"]["seed"], 4);
    std::fs::write(&cfg, r#"{"version": 1, "simulate": {"trails": 5}}"#).unwrap();
    assert_eq!(ringrep(&["simulate", "--config", c]).status.code(), Some(2));
    std::fs::write(&cfg, r#"{"version": 2}"#).unwrap();
    assert_eq!(ringrep(&["resources", "--config", c]).status.code(), Some(2));
    let grid = RunConfig::parse(r#"{"version": 1, "pauli_stats": {"eta_grid": "0.8:1:3", "lambda_grid": [0, 0.1]}}"#)
        .unwrap();
    assert_eq!(grid.pauli_stats.unwrap().eta_grid.unwrap().0, vec![0.8, 0.9, 1.0]);
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_ringrep"))
        .args(["resources", "--depth", "1"])
        .env("RINGREP_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("resources.json")).unwrap()).unwrap();
    assert_eq!(v["counts"]["photons"], 4);
    let explicit = dir.path().join("sub/f.csv");
    assert!(ringrep(&["fusion-success", "--depth", "1", "--steps", "3", "--out", explicit.to_str().unwrap()])
        .status
        .success());
    assert_eq!(std::fs::read_to_string(explicit).unwrap().lines().count(), 4);
}

#[test]
fn optimize_headline_row() {
    let text = stdout(&["optimize", "--l-grid", "10000", "--lambda-list", "0.0015"]);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let r: f64 = row[6].parse().unwrap();
    let ne: usize = row[11].parse().unwrap();
    assert!(r >= 1000.0 && ne <= 8, "{row:?}");
}

#[test]
fn estimator_registry() {
    let reg = EstimatorRegistry::default();
    assert_eq!(reg.names(), vec!["analytic", "monte-carlo", "exact"]);
    let q = Query {
        spec: RingCodeSpec::loss_only(4, 1).unwrap(),
        eta: 0.9,
        lambda: 0.0,
        mode: mc_harness::Mode::Pauli(ring_codes::Basis::Z),
        trials: 1000,
        seed: 1,
    };
    let a = reg.lookup("analytic").unwrap().estimate(&q).unwrap();
    let e = reg.lookup("exact").unwrap().estimate(&q).unwrap();
    assert!((a.transmitted - e.transmitted).abs() < 1e-12);
    let m = reg.lookup("monte-carlo").unwrap().estimate(&q).unwrap();
    assert!(m.stderr.is_some());
    assert!(reg.lookup("nope").is_err());
}
