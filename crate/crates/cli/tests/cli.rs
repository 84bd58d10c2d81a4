use std::process::{Command, Output};

use pmlab_cli::{RunRecord, Value};

fn pmlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pmlab"))
        .args(args)
        .env_remove("PMLAB_THREADS")
        .output()
        .expect("binary runs")
}

fn record(args: &[&str]) -> RunRecord {
    let out = pmlab(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    RunRecord::read_csv(out.stdout.as_slice()).unwrap()
}

fn float(v: &Value) -> f64 {
    v.as_f64().unwrap_or_else(|| panic!("not a number: {v:?}"))
}

fn col(rec: &RunRecord, name: &str) -> Vec<f64> {
    rec.column(name).unwrap().into_iter().map(float).collect()
}

#[test]
fn dcoef_minus_half() {
    let rec = record(&["dcoef", "--alpha", "-0.5", "--n", "1,2,4"]);
    assert_eq!(col(&rec, "d"), vec![1.0, -0.5, -0.125]);
    let rec = record(&["dcoef", "--alpha", "0.5", "--n", "1"]);
    assert_eq!(col(&rec, "d"), vec![1.0]);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(pmlab(&["dcoef", "--alpha", "abc", "--n", "1"]).status.code(), Some(2));
    assert_eq!(pmlab(&["exact", "--kind", "J", "--Y", "3"]).status.code(), Some(2));
    assert_eq!(pmlab(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_three() {
    assert_eq!(pmlab(&["bound", "--q", "1.5", "--N", "100"]).status.code(), Some(3));
    assert_eq!(pmlab(&["bound", "--q", "1", "--N", "10"]).status.code(), Some(3));
}

#[test]
fn budget_exceeded_exits_four() {
    let out = pmlab(&["exact", "--kind", "i2", "--Y", "100", "--node-budget", "16", "--tol", "1e-14"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn exact_examples() {
    let rec = record(&["exact", "--kind", "J", "--Y", "3", "--beta", "2"]);
    let v = col(&rec, "value")[0];
    assert!((v - 3.0).abs() <= col(&rec, "truncation_error")[0] + 1e-15);
    assert!((v - 3.0).abs() < 1e-10);

    let rec = record(&["exact", "--kind", "l2k", "--k", "1", "--N", "3"]);
    assert!((col(&rec, "value")[0] - 11.0 / 6.0).abs() < 1e-15);

    // N = 1: the Euler product ∏_{p<=10} Σ_k d_{-1/2}(p^k)^2 p^{-k}.
    let rec = record(&["exact", "--kind", "I", "--N", "1", "--Y", "10"]);
    let mut oracle = 1.0;
    for p in [2.0f64, 3.0, 5.0, 7.0] {
        let (mut c, mut local, mut x) = (1.0f64, 0.0, 1.0);
        for k in 0..200 {
            local += c * c * x;
            c *= (k as f64 - 0.5) / (k as f64 + 1.0);
            x /= p;
        }
        oracle *= local;
    }
    assert!((col(&rec, "value")[0] - oracle).abs() < 1e-12);
}

#[test]
fn norm_examples() {
    let rec = record(&["norm", "--N", "1", "--q", "1", "--samples", "100", "--seed", "7"]);
    assert_eq!(col(&rec, "mean"), vec![1.0]);
    assert_eq!(col(&rec, "stderr"), vec![0.0]);
    assert_eq!(rec.seed, Some(7));

    let rec = record(&["norm", "--N", "1000", "--q", "0.5,1,1.5,2", "--samples", "20000", "--seed", "3"]);
    let norms = col(&rec, "norm");
    assert!(norms.windows(2).all(|w| w[0] <= w[1]), "{norms:?}");
    let (mean, se) = (col(&rec, "mean")[3], col(&rec, "stderr")[3]);
    assert!((mean - 7.485_470_860_550_345).abs() <= 3.0 * se, "{mean} ± {se}");
    assert!(rec.columns.contains(&"seed".to_string()));
}

#[test]
fn const_beta_two() {
    let rec = record(&["const", "--beta", "2"]);
    let (v, tail) = (col(&rec, "value")[0], col(&rec, "tail_bound")[0]);
    assert!((v - 1.0).abs() <= tail);
}

#[test]
fn bound_optimize() {
    let rec = record(&["bound", "--q", "1", "--optimize-B"]);
    let b = col(&rec, "B_star")[0];
    assert!((b - 0.577_215_664_901_532_9f64.exp() / std::f64::consts::PI).abs() < 1e-15);
    assert_eq!(rec.column("below_B_floor").unwrap()[0], &Value::Bool(true));
    let c = col(&rec, "constant")[0];
    let a1 = col(&rec, "a1")[0];
    assert!((c - (4.0 / std::f64::consts::PI).powf(0.25) * a1).abs() < 1e-12);
}

#[test]
fn bound_row_carries_label() {
    let rec = record(&["bound", "--q", "1", "--N", "10000", "--Y", "100"]);
    assert!(rec.notes.iter().any(|(_, v)| v == "principal terms only"));
    assert_eq!(rec.column("Y_range_nonempty").unwrap()[0], &Value::Bool(false));
}

#[test]
fn verify_holder_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = pmlab(&[
        "verify", "--suite", "holder", "--N", "100", "--Y", "5,7", "--samples", "2000",
        "--prime-limit", "1000", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rec = RunRecord::read_json(std::fs::File::open(&path).unwrap()).unwrap();
    assert_eq!(rec.rows.len(), 2);
    assert!(rec.column("pass").unwrap().iter().all(|v| **v == Value::Bool(true)));
    for r in col(&rec, "ratio") {
        assert!(r.is_finite() && r > 0.0);
    }
}

#[test]
fn verify_prop1_ratio_decreases() {
    let rec = record(&["verify", "--suite", "prop1", "--Y", "100,1000,10000,100000", "--beta", "2"]);
    let ratios = col(&rec, "ratio");
    assert!(ratios.windows(2).all(|w| w[1] < w[0]), "{ratios:?}");
}

#[test]
fn empty_grid_is_empty_report() {
    let rec = record(&["verify", "--suite", "holder", "--N", "", "--prime-limit", "100"]);
    assert!(rec.rows.is_empty());
}

#[test]
fn identical_runs_have_identical_bodies() {
    let args = ["norm", "--N", "300", "--q", "1,2", "--samples", "500", "--seed", "11"];
    let a = String::from_utf8(pmlab(&args).stdout).unwrap();
    let b = String::from_utf8(pmlab(&args).stdout).unwrap();
    assert_eq!(RunRecord::csv_body(&a), RunRecord::csv_body(&b));

    let threaded = Command::new(env!("CARGO_BIN_EXE_pmlab"))
        .args(args)
        .env("PMLAB_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(RunRecord::csv_body(&String::from_utf8(threaded.stdout).unwrap()), RunRecord::csv_body(&a));
}

#[test]
fn both_formats_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (fmt, file) in [("csv", "x.csv"), ("json", "x.json")] {
        let path = dir.path().join(file);
        let out = pmlab(&[
            "--format", fmt, "--out", path.to_str().unwrap(),
            "norm", "--N", "50", "--q", "0.5,2", "--samples", "200",
        ]);
        assert!(out.status.success());
        let text = std::fs::read_to_string(&path).unwrap();
        let rec = match fmt {
            "csv" => RunRecord::read_csv(text.as_bytes()).unwrap(),
            _ => RunRecord::read_json(text.as_bytes()).unwrap(),
        };
        let again = match fmt {
            "csv" => rec.to_csv_string(),
            _ => rec.to_json_string(),
        };
        assert_eq!(text, again);
        assert_eq!(rec.rows.len(), 2);
    }
}
