//! End-to-end behavior of the command-line binary: exit codes, output
//! formats, elision, and the scan cache.

use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_collatz-lab");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn run_cached(args: &[&str], cache: &Path) -> Output {
    Command::new(BIN)
        .args(args)
        .arg("--cache")
        .arg(cache)
        .output()
        .expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr_str(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

#[test]
fn exit_code_zero_on_success() {
    assert_eq!(run(&["traj", "3"]).status.code(), Some(0));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["seeds", "3", "--verify"]).status.code(), Some(0));
}

#[test]
fn exit_code_one_on_usage_errors() {
    let bad_number = run(&["traj", "abc"]);
    assert_eq!(bad_number.status.code(), Some(1));
    assert!(stderr_str(&bad_number).contains("not a decimal natural number"));

    assert_eq!(run(&["nosuchcmd"]).status.code(), Some(1));
    assert_eq!(run(&["traj"]).status.code(), Some(1));

    let bad_suite = run(&["verify", "bogus"]);
    assert_eq!(bad_suite.status.code(), Some(1));
    assert!(stderr_str(&bad_suite).contains("unknown suite"));
}

#[test]
fn exit_code_two_on_budget_with_partial_output() {
    let out = run(&["traj", "27", "--budget", "10"]);
    assert_eq!(out.status.code(), Some(2));
    let stdout = stdout_str(&out);
    assert!(stdout.contains("terms: 27 82 41 124 62 31 94 47 142 71 214"));
    assert!(stdout.contains("budget_exceeded: true"));
    assert!(stderr_str(&out).contains("did not reach 1 within 10 steps"));
}

#[test]
fn traj_human_output() {
    let out = stdout_str(&run(&["traj", "3"]));
    for line in [
        "start: 3",
        "map: f",
        "steps: 7",
        "terms: 3 10 5 16 8 4 2 1",
        "gaps: (1,4)",
        "o: 2",
        "e: 5",
        "sigma_inf: 5",
        "completeness: 2/5 = 0.400000",
        "ones_ratio: 2/5",
    ] {
        assert!(out.contains(line), "missing {line:?} in:\n{out}");
    }
}

#[test]
fn traj_accelerated_map() {
    let out = stdout_str(&run(&["traj", "3", "--map", "t"]));
    assert!(out.contains("map: t"));
    assert!(out.contains("steps: 5"));
    assert!(out.contains("terms: 3 5 8 4 2 1"));
    // gap sequences are defined for the plain map only
    assert!(!out.contains("gaps:"));
}

#[test]
fn traj_handles_one() {
    let out = run(&["traj", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = stdout_str(&out);
    assert!(stdout.contains("terms: 1 4 2 1"));
    assert!(stdout.contains("gaps: (2)"));
    assert!(stdout.contains("o: 1"));
    assert!(stdout.contains("e: 2"));
    assert!(stdout.contains("completeness: 1/2"));
}

#[test]
fn traj_json_fields() {
    let out = stdout_str(&run(&["traj", "3", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(out.trim()).expect("valid json");
    assert_eq!(v["start"].as_str(), Some("3"));
    assert_eq!(v["steps"].as_u64(), Some(7));
    assert_eq!(v["terms"].as_array().map(Vec::len), Some(8));
    assert_eq!(v["terms"][0].as_str(), Some("3"));
    assert_eq!(v["gaps"], serde_json::json!([1, 4]));
    assert_eq!(v["completeness"].as_str(), Some("2/5"));
    assert_eq!(v["budget_exceeded"].as_bool(), Some(false));
    assert_eq!(v["elided"].as_bool(), Some(false));
}

#[test]
fn traj_csv_rows() {
    let out = stdout_str(&run(&["traj", "3", "--format", "csv"]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "index,term");
    assert_eq!(lines.len(), 9);
    assert_eq!(lines[1], "0,3");
    assert_eq!(lines[8], "7,1");
}

#[test]
fn traj_elides_long_orbits_unless_full() {
    let elided = stdout_str(&run(&["traj", "27"]));
    assert!(elided.contains("…"), "long orbits print elided by default");
    assert!(elided.contains("(112 terms)"));

    let full = stdout_str(&run(&["traj", "27", "--full"]));
    assert!(!full.contains("…"));
    assert!(full.contains("9232"), "the orbit peak appears in full output");
}

#[test]
fn traj_quiet_on_big_start() {
    let out = stdout_str(&run(&["traj", "7219136416377236271195", "--quiet"]));
    assert!(!out.contains("terms:"), "--quiet suppresses the term listing");
    assert!(out.contains("steps: 2968"));
    assert!(out.contains("completeness: 20/33 = 0.606061"));
}

#[test]
fn rep_formats() {
    let human = stdout_str(&run(&["rep", "17"]));
    assert!(human.contains("exponents: (0,2,5,9)"));
    assert!(human.contains("check: 17"));
    assert!(human.contains("witness_smooth: (0,2,5)"));

    let json = stdout_str(&run(&["rep", "17", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(json.trim()).expect("valid json");
    assert_eq!(v["exponents"], serde_json::json!([0, 2, 5, 9]));
    assert_eq!(v["check"].as_str(), Some("17"));
    assert_eq!(v["witness"]["smooth"], serde_json::json!([0, 2, 5]));
}

#[test]
fn wirsching_encode_and_direct_eval() {
    let encoded = stdout_str(&run(&["wirsching", "17"]));
    assert!(encoded.contains("alphas: (0,1,2,3)"));
    assert!(encoded.contains("zeta(1): 17"));

    let direct = stdout_str(&run(&["wirsching", "--alphas", "0,2,1"]));
    assert!(direct.contains("norm: 5"));
    assert!(direct.contains("small: false"));
    assert!(direct.contains("zeta(1): 7/3"));
}

#[test]
fn seeds_csv_and_count_only() {
    let csv = stdout_str(&run(&["seeds", "3", "--format", "csv"]));
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "level,branch,c,upsilon,value,e,o,expansion_duplicate");
    assert_eq!(lines.len(), 13);
    assert_eq!(lines[1], "3,E,10,1,151,12,3,false");

    let count = stdout_str(&run(&["seeds", "4", "--count-only"]));
    assert_eq!(count.trim(), "level 4: 216 seeds");
    // counting is closed-form: far beyond the enumeration cap is fine
    let big = stdout_str(&run(&["seeds", "12", "--count-only"]));
    assert!(big.contains("level 12:"));
}

#[test]
fn verify_all_suites_pass() {
    let out = run(&["verify"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = stdout_str(&out);
    for suite in [
        "roundtrip", "table1", "mixing", "prop6", "c2", "lemma-l1", "cycles", "corner", "zk",
        "wirsching",
    ] {
        assert!(
            stdout.contains(&format!("{suite}: PASS")),
            "suite {suite} must pass in:\n{stdout}"
        );
    }
    assert!(!stdout.contains("FAIL"));

    let single = run(&["verify", "table1"]);
    assert_eq!(single.status.code(), Some(0));
    assert!(stdout_str(&single).contains("table1: PASS"));
}

#[test]
fn scan_human_and_csv() {
    let human = stdout_str(&run(&["scan", "2000", "--stat", "completeness"]));
    assert!(human.contains("m=3 value=0.400000 o=2 e=5 g1=4"));
    assert!(human.contains("m=27 value=0.585714 o=41 e=70 g1=4"));
    assert!(human.contains("4 records"));

    let csv = stdout_str(&run(&["scan", "2000", "--stat", "completeness", "--format", "csv"]));
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "m,stat,value,o,e,g1");
    assert_eq!(lines[1], "3,completeness,0.4,2,5,4");
    assert_eq!(lines.len(), 5);
}

#[test]
fn scan_cache_is_transparent_and_reused() {
    let dir = tempfile::tempdir().expect("tempdir");
    let cache = dir.path();
    let args = ["scan", "2000", "--stat", "res", "--format", "csv"];

    let cold = run_cached(&args, cache);
    assert_eq!(cold.status.code(), Some(0));
    let shards: Vec<_> = std::fs::read_dir(cache)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    assert!(!shards.is_empty(), "cold scan writes shard files");
    assert!(shards.iter().all(|name| name.starts_with("scan-res-") && name.ends_with(".csv")));

    let warm = run_cached(&args, cache);
    assert_eq!(cold.stdout, warm.stdout, "warm run reads the same records back");

    let uncached = run(&args);
    assert_eq!(cold.stdout, uncached.stdout, "cache must not change results");

    // extending the range reuses the prefix shards
    let wider = run_cached(&["scan", "4000", "--stat", "res", "--format", "csv"], cache);
    let fresh = run(&["scan", "4000", "--stat", "res", "--format", "csv"]);
    assert_eq!(wider.stdout, fresh.stdout);
}

#[test]
fn scan_thread_count_does_not_change_output() {
    let one = run(&["scan", "30000", "--stat", "gamma", "--threads", "1", "--format", "json"]);
    let six = run(&["scan", "30000", "--stat", "gamma", "--threads", "6", "--format", "json"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, six.stdout);
}

#[test]
fn cycle_corner_zk_mixing_c2_run_clean() {
    let cycle = run(&["cycle", "--k-max", "3", "--a-max", "20"]);
    assert_eq!(cycle.status.code(), Some(0));
    let cycle_out = stdout_str(&cycle);
    assert!(cycle_out.contains("profiles: 6195"));
    assert!(cycle_out.contains("nontrivial: none"));

    let corner = stdout_str(&run(&["corner", "even", "--k-max", "2"]));
    assert!(corner.contains("k=1 value=151 o=3 e=12"));

    let zk = stdout_str(&run(&["zk", "--k-max", "3"]));
    assert!(zk.contains("k=0 z=4"));
    assert!(zk.contains("k=3 z=141"));

    let mixing = run(&["mixing", "3"]);
    assert_eq!(mixing.status.code(), Some(0));
    assert!(stdout_str(&mixing).contains("seed=151 υ1=1 b0=0 member=151 iters=2 landed=227"));

    let c2 = run(&["c2", "2000"]);
    assert_eq!(c2.status.code(), Some(0));
    let c2_out = stdout_str(&c2);
    assert!(c2_out.contains("checked: 999"));
    assert!(c2_out.contains("disagreements: none"));
}
