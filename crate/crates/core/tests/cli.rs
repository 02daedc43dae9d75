//! End-to-end runs of the command-line driver.

use std::process::{Command, Output};

fn erwlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_erwlab"))
        .args(args)
        .env_remove("ERWLAB_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Data rows after the `#` metadata and the header.
fn data_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

#[test]
fn dist_row_sums_to_one() {
    let o = erwlab(&["dist", "--p", "0.8", "--n", "40"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().any(|l| l == "n,k,s,prob"));
    let mass: f64 = data_rows(&text).iter().map(|r| r[3].parse::<f64>().unwrap()).sum();
    assert!((mass - 1.0).abs() < 1e-12);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(erwlab(&["dist", "--a", "0.6", "--p", "0.8"]).status.code(), Some(2));
    assert_eq!(erwlab(&["dist"]).status.code(), Some(2));
    assert_eq!(erwlab(&["limit", "--a", "0.3"]).status.code(), Some(2));
    assert_eq!(erwlab(&["limit", "--a", "0.75", "--lo", "0.5", "--hi", "0.1"]).status.code(), Some(2));
    assert_eq!(erwlab(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn numeric_failures_exit_one() {
    let o = erwlab(&["specfun", "--function", "ml", "--alpha", "0.5", "--z", "-10"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("digits"));
}

#[test]
fn high_precision_flag_rescues_negative_argument() {
    let o = erwlab(&["specfun", "--function", "ml", "--alpha", "0.5", "--z", "-10", "--precision-digits", "80"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let value = v["result"]["value"].as_f64().unwrap();
    let expected = 100f64.exp() * libm::erfc(10.0);
    assert!((value / expected - 1.0).abs() < 1e-12);
}

#[test]
fn simulate_is_reproducible_and_records_seed() {
    let args = ["simulate", "--p", "0.92", "--n", "300", "--count", "2000", "--seed", "7", "--bins", "40"];
    let a = erwlab(&args);
    let b = erwlab(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.lines().any(|l| l == "# seed: 7"));
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 40);
    let counted: i64 = rows.iter().map(|r| r[2].parse::<i64>().unwrap()).sum();
    assert_eq!(counted, 2000);
}

#[test]
fn thread_count_does_not_change_samples() {
    let args = ["simulate", "--a", "0.7", "--n", "200", "--count", "500", "--seed", "3", "--raw"];
    let one = Command::new(env!("CARGO_BIN_EXE_erwlab")).args(args).env("ERWLAB_THREADS", "1").output().unwrap();
    let two = Command::new(env!("CARGO_BIN_EXE_erwlab")).args(args).arg("--threads").arg("2").output().unwrap();
    assert!(one.status.success() && two.status.success());
    let strip = |o: &Output| -> Vec<String> {
        // The config echo differs; the samples must not.
        stdout(o).lines().filter(|l| !l.starts_with('#')).map(str::to_owned).collect()
    };
    assert_eq!(strip(&one), strip(&two));
}

#[test]
fn moments_ratio_tends_to_one() {
    let o = erwlab(&["moments", "--a", "0.6667", "--n-max", "1000"]);
    assert!(o.status.success());
    let rows = data_rows(&stdout(&o));
    assert_eq!(rows.len(), 1001);
    let dev = |n: usize| (rows[n][4].parse::<f64>().unwrap() - 1.0).abs();
    assert!(dev(1000) < dev(100) && dev(100) < dev(10));
    assert!(dev(1000) < 2e-3, "{}", dev(1000));
}

#[test]
fn moments_json_carries_context() {
    let o = erwlab(&["moments", "--a", "0.75", "--n-max", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["context"]["rho"].as_f64().unwrap() > 1.0);
    assert_eq!(v["rows"].as_array().unwrap().len(), 6);
}

#[test]
fn limit_and_tails_tables() {
    let o = erwlab(&["limit", "--a", "0.75", "--points", "10"]);
    assert!(o.status.success());
    let rows = data_rows(&stdout(&o));
    assert_eq!(rows.len(), 10);
    for r in &rows {
        assert!(r[5].parse::<f64>().unwrap().abs() < 1e-9, "r_imp {}", r[5]);
    }
    let o = erwlab(&["tails", "--a", "0.75", "--n", "300", "--points", "5"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("x,tail_pos_log,tail_neg_log,exact_density_log"));
}

#[test]
fn output_file_is_written() {
    let dir = std::env::temp_dir().join(format!("erwlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("shape.csv");
    let o = erwlab(&["shape", "--a", "0.6", "--n-max", "20", "-o", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(data_rows(&text).len(), 20);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn every_subcommand_documents_defaults() {
    for cmd in ["dist", "shape", "simulate", "moments", "rho", "limit", "tails", "specfun", "check"] {
        let o = erwlab(&[cmd, "--help"]);
        assert!(o.status.success(), "{cmd}");
        let text = stdout(&o);
        assert!(text.contains("[default"), "{cmd} --help lists no defaults");
    }
}

#[test]
fn check_reports_every_criterion() {
    let o = erwlab(&["check", "--a", "0.75"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().filter(|l| l.starts_with("PASS") || l.starts_with("FAIL")).collect();
    let ids: Vec<&str> = lines.iter().map(|l| l.split_whitespace().nth(1).unwrap()).collect();
    for id in ["1", "2", "3", "4", "5", "6", "7", "8a", "8b", "9", "10", "11", "a1", "a2", "a3", "a4", "a5", "a6"] {
        assert!(ids.contains(&id), "missing criterion {id}");
    }
    let any_failed = lines.iter().any(|l| l.starts_with("FAIL"));
    assert_eq!(o.status.code(), Some(if any_failed { 1 } else { 0 }));
}
