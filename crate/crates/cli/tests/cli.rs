use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use particover::cache::CACHE_ENV;
use particover::record::{Quantity, ResultRecord};

fn run(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_particover"));
    cmd.args(args).env_remove(CACHE_ENV);
    if let Some(path) = cache {
        cmd.env(CACHE_ENV, path);
    }
    cmd.output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn records(path: &Path) -> Vec<ResultRecord> {
    std::fs::read_to_string(path).unwrap().lines().map(|l| ResultRecord::from_line(l).unwrap()).collect()
}

fn cache_file(dir: &tempfile::TempDir) -> PathBuf {
    dir.path().join("results.jsonl")
}

#[test]
fn compute_s4_json() {
    let out = run(&["compute", "S4", "--json"], None);
    assert_eq!(out.status.code(), Some(0));
    let rec = ResultRecord::from_line(stdout(&out).trim()).unwrap();
    assert_eq!((rec.spec.as_str(), rec.order), ("S4", 24));
    assert_eq!((rec.sigma, rec.rho), (Quantity::Value(4), Quantity::Value(10)));
}

#[test]
fn suzuki_reports_an_interval() {
    let out = run(&["compute", "Sz(8)", "--json"], None);
    assert_eq!(out.status.code(), Some(0));
    let rec = ResultRecord::from_line(stdout(&out).trim()).unwrap();
    assert_eq!(rec.sigma, Quantity::Value(2080));
    assert_eq!(rec.rho, Quantity::Interval(2143, Some(4161)));
    let strict = run(&["compute", "Sz(8)", "--exact-only"], None);
    assert_eq!(strict.status.code(), Some(1));
}

#[test]
fn bad_input_exits_with_usage_code() {
    assert_eq!(run(&["compute", "Q8"], None).status.code(), Some(2));
    assert_eq!(run(&["compute"], None).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"], None).status.code(), Some(2));
}

#[test]
fn cache_hit_on_second_run() {
    let dir = tempfile::tempdir().unwrap();
    let path = cache_file(&dir);
    let first = run(&["compute", "D12"], Some(&path));
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(records(&path).len(), 1);
    let second = run(&["compute", "D12"], Some(&path));
    assert!(stdout(&second).contains("(cached)"));
    assert_eq!(records(&path).len(), 1);
    run(&["compute", "D12", "--refresh"], Some(&path));
    assert_eq!(records(&path).len(), 2);
}

#[test]
fn verify_accepts_sidecar_and_rejects_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let path = cache_file(&dir);
    assert_eq!(run(&["compute", "A4"], Some(&path)).status.code(), Some(0));
    let rec = records(&path).pop().unwrap();
    let digest = rec.cert_digest.expect("certificate digest recorded");
    let sidecar = dir.path().join(format!("{digest}.cert"));
    let ok = run(&["verify", "A4", sidecar.to_str().unwrap()], None);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    assert!(stdout(&ok).contains("OK"));

    // dropping a partition member leaves elements uncovered
    let text = std::fs::read_to_string(&sidecar).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    lines.pop();
    let tampered = dir.path().join("tampered.cert");
    std::fs::write(&tampered, lines.join("\n") + "\n").unwrap();
    let bad = run(&["verify", "A4", tampered.to_str().unwrap()], None);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("INVALID"));

    // same content under a digest-shaped name that does not match
    let renamed = dir.path().join(format!("{}.cert", "0".repeat(64)));
    std::fs::copy(&sidecar, &renamed).unwrap();
    assert_eq!(run(&["verify", "A4", renamed.to_str().unwrap()], None).status.code(), Some(1));
}

#[test]
fn concurrent_appenders_keep_every_record() {
    let dir = tempfile::tempdir().unwrap();
    let path = cache_file(&dir);
    let specs = ["S3", "D8", "C2^3", "A4", "D10", "S4"];
    let children: Vec<_> = specs
        .iter()
        .map(|s| {
            Command::new(env!("CARGO_BIN_EXE_particover"))
                .args(["compute", s])
                .env(CACHE_ENV, &path)
                .stdout(std::process::Stdio::null())
                .spawn()
                .unwrap()
        })
        .collect();
    for mut c in children {
        assert!(c.wait().unwrap().success());
    }
    let mut got: Vec<String> = records(&path).into_iter().map(|r| r.spec).collect();
    got.sort();
    let mut want: Vec<String> = specs.iter().map(|s| s.to_string()).collect();
    want.sort();
    assert_eq!(got, want);
}

#[test]
fn subgroups_lists_lattice() {
    let out = run(&["subgroups", "S4"], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("30 subgroups"));
}

#[test]
fn table_passes() {
    let out = run(&["table", "paper", "--budget-seconds", "10"], None);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(!text.contains("FAIL"));
    assert!(text.contains("Sz(8)"));
}
