use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qlzero(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qlzero")).args(args).env_remove("QLZERO_CACHE").output().unwrap()
}

fn records(out: &[u8]) -> Vec<Value> {
    String::from_utf8_lossy(out).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

/// Records minus timings and the ledger of operator applications, both of
/// which depend on how much work the cache saved.
fn without_timing(path: &Path) -> Vec<Value> {
    let mut rs = records(&std::fs::read(path).unwrap());
    rs.retain(|r| r["id"] != "locality/margins");
    for r in &mut rs {
        r.as_object_mut().unwrap().remove("wall_ms");
    }
    rs
}

#[test]
fn hecke_suite_passes() {
    let out = qlzero(&["check", "--suite", "hecke", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rs = records(&out.stdout);
    assert_eq!(rs.len(), 8, "seven relations and the locality verdict");
    assert!(rs.iter().all(|r| r["status"] == "pass"));
    assert_eq!(rs.last().unwrap()["id"], "locality/margins");
    for key in ["id", "relation", "status", "residual", "tested", "detail", "wall_ms"] {
        assert!(rs[0].get(key).is_some(), "missing {key}");
    }
}

#[test]
fn fusion_away_from_q4_is_a_config_error() {
    let out = qlzero(&["check", "--suite", "fusion", "--p", "q3"]);
    assert_eq!(out.status.code(), Some(2));
    let rs = records(&out.stdout);
    assert_eq!(rs[0]["id"], "config/validate");
}

#[test]
fn bad_flags_are_config_errors() {
    assert_eq!(qlzero(&["check", "--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(qlzero(&["check", "--suite", "hecke", "--window", "0..-2"]).status.code(), Some(2));
    assert_eq!(qlzero(&["check", "--suite", "rewriter", "--window", "-2..1"]).status.code(), Some(2));
}

#[test]
fn empty_run_passes() {
    let out = qlzero(&["check"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
}

#[test]
fn toml_config_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "p = \"generic-sample\"\n\n[[suites]]\nsuite = \"exchange\"\nn = 2\nwindow = \"-2..0\"\n").unwrap();
    let out = qlzero(&["check", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let ids: Vec<String> = records(&out.stdout).iter().map(|r| r["id"].as_str().unwrap().to_string()).collect();
    for tag in ["@q3", "@q4", "@q5"] {
        assert!(ids.iter().any(|i| i.ends_with(tag)), "{tag} missing from {ids:?}");
    }
    let out = qlzero(&["check", "--config", cfg.to_str().unwrap(), "--p", "q4"]);
    assert!(records(&out.stdout).iter().all(|r| !r["id"].as_str().unwrap().contains('@')));
    std::fs::write(&cfg, "colour = 1\n").unwrap();
    assert_eq!(qlzero(&["check", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn warm_cache_gives_the_same_report() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "[[suites]]\nsuite = \"characters\"\ndegree = 3\n\n[[suites]]\nsuite = \"rewriter\"\nwindow = \"-2..0\"\n").unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = qlzero(&["check", "--config", cfg.to_str().unwrap(), "--cache", cache.to_str().unwrap(), "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        out
    };
    let cold = run("cold.jsonl");
    assert!(std::fs::read_dir(&cache).unwrap().count() > 0);
    let warm = run("warm.jsonl");
    assert_eq!(without_timing(&cold), without_timing(&warm));
}

#[test]
fn kernel_is_cached() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().to_str().unwrap();
    let first = qlzero(&["kernel", "--n", "2", "--window", "-2..0", "--cache", c]);
    assert_eq!(first.status.code(), Some(0));
    let text = String::from_utf8_lossy(&first.stdout).to_string();
    assert!(text.contains("quotient"), "{text}");
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
    let second = qlzero(&["kernel", "--n", "2", "--window", "-2..0", "--cache", c]);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn dump_prints_matrix_entries() {
    let out = qlzero(&["dump", "--op", "g1", "--n", "2", "--window", "-1..0"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().count() > 0 && text.lines().all(|l| l.contains(" -> ") && l.contains(" : ")));
    assert_ne!(qlzero(&["dump", "--op", "g3", "--n", "2"]).status.code(), Some(0));
}

#[test]
fn prescreen_keeps_verdicts() {
    let verdicts = |extra: &[&str]| -> Vec<(Value, Value)> {
        let mut args = vec!["check", "--suite", "normal-order", "--suite", "fusion", "--suite", "rewriter", "--n", "2", "--window", "-3..0"];
        args.extend_from_slice(extra);
        let out = qlzero(&args);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        records(&out.stdout).iter().map(|r| (r["id"].clone(), r["status"].clone())).collect()
    };
    assert_eq!(verdicts(&[]), verdicts(&["--fast-prescreen"]));
}
