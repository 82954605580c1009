//! Black-box tests of the binary: output schemas, exit codes, cache round
//! trips and b-file comparison.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_subsum"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_with_cache(args: &[&str], cache_dir: &std::path::Path) -> Output {
    bin()
        .args(args)
        .env("SUBSUM_CACHE_DIR", cache_dir)
        .output()
        .expect("binary runs")
}

fn stdout_lines(out: &Output) -> Vec<String> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(str::to_string)
        .collect()
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("subsum-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn compute_num_matches_golden_row() {
    let out = run(&["compute", "num", "3", "--no-cache"]);
    assert!(out.status.success());
    let record: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(record["object"], "num");
    assert_eq!(record["n"], 3);
    assert_eq!(record["family"], "all");
    let coeffs: Vec<&str> = record["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert_eq!(coeffs, ["3", "2", "4", "2", "3"]);
}

#[test]
fn compute_den_exponent_map() {
    let out = run(&["compute", "den", "3", "--no-cache"]);
    let record: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(record["exps"]["1"], 2);
    assert_eq!(record["exps"]["2"], 1);
    assert_eq!(record["exps"]["3"], 1);
}

#[test]
fn compute_c_row() {
    let out = run(&["compute", "c-row", "6", "--no-cache"]);
    let record: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(record["n"], 6);
    let row: Vec<&str> = record["c"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert_eq!(row, ["3", "1"]);
}

#[test]
fn compute_csv_has_header() {
    let out = run(&["compute", "num", "2", "--no-cache", "--format", "csv"]);
    let lines = stdout_lines(&out);
    assert_eq!(lines[0], "object,n,family,key,value");
    assert_eq!(lines[1], "num,2,all,0,2");
    assert_eq!(lines.len(), 4);
}

#[test]
fn invalid_combination_is_usage_error() {
    let out = run(&["compute", "num-b", "4", "--family", "odd", "--no-cache"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["compute", "nonsense-object", "4", "--no-cache"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_exit_codes() {
    let out = run(&["check", "THM_NUM_MINUS1", "1", "10"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_lines(&out).len(), 10);

    let out = run(&["check", "PROP_NUM_AT_1_AS_STATED", "2", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 3);
    let first: serde_json::Value = serde_json::from_str(&lines[0]).unwrap();
    assert_eq!(first["status"], "fail");
    assert_eq!(first["computed"], "6");
    assert_eq!(first["expected"], "4");

    let out = run(&["check", "NOT_A_CHECK", "1", "2"]);
    assert_eq!(out.status.code(), Some(2));

    // Out-of-domain explicit range is a usage error.
    let out = run(&["check", "C_MATRIX", "1", "15"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn conjecture_checks_do_not_gate_by_default() {
    let out = run(&["check", "ODD_MINUS1_CONJ", "1", "12"]);
    assert_eq!(out.status.code(), Some(0));
    let lines = stdout_lines(&out);
    let record: serde_json::Value = serde_json::from_str(&lines[0]).unwrap();
    assert_eq!(record["gating"], false);
    // Strict mode promotes the class to gating (they still pass).
    let out = run(&["check", "ODD_MINUS1_CONJ", "1", "12", "--strict"]);
    assert_eq!(out.status.code(), Some(0));
    let lines = stdout_lines(&out);
    let record: serde_json::Value = serde_json::from_str(&lines[0]).unwrap();
    assert_eq!(record["gating"], true);
}

#[test]
fn check_suite_with_jobs_and_csv() {
    let out = run(&[
        "check",
        "power-sums",
        "1",
        "6",
        "--jobs",
        "2",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let lines = stdout_lines(&out);
    assert_eq!(
        lines[0],
        "check,n,status,computed,expected,elapsed_ms,gating"
    );
    // Three checks, six rows each.
    assert_eq!(lines.len(), 1 + 18);
}

#[test]
fn check_output_is_deterministic_across_job_counts() {
    let strip_elapsed = |out: &Output| -> Vec<serde_json::Value> {
        stdout_lines(out)
            .iter()
            .map(|l| {
                let mut v: serde_json::Value = serde_json::from_str(l).unwrap();
                v.as_object_mut().unwrap().remove("elapsed_ms");
                v
            })
            .collect()
    };
    let one = run(&["check", "THM_NUM_I_ABS2", "1", "14", "--jobs", "1"]);
    let four = run(&["check", "THM_NUM_I_ABS2", "1", "14", "--jobs", "4"]);
    assert_eq!(strip_elapsed(&one), strip_elapsed(&four));
}

#[test]
fn eval_points() {
    let out = run(&["eval", "3", "minus1"]);
    let record: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(record["value"], "6");

    let out = run(&["eval", "3", "zeta:4"]);
    let record: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(record["residue"][0], "2");
    assert_eq!(record["residue"][1], "0");
    assert_eq!(record["abs2"], "4");

    let out = run(&["eval", "4", "one"]);
    let record: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(record["value"], "152");

    // No abs2 field outside the supported moduli.
    let out = run(&["eval", "6", "zeta:5"]);
    let record: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(record.get("abs2").is_none());

    let out = run(&["eval", "3", "bogus-point"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn factor_objects() {
    let out = run(&["factor", "qd", "6"]);
    let record: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for key in ["2", "4", "6", "12"] {
        assert_eq!(record["phi_exps"][key], 1, "Phi_{key}");
    }
    let out = run(&["factor", "f", "3", "--d", "2"]);
    let record: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(record["phi_exps"]["2"], 2);
    assert_eq!(record["phi_exps"]["6"], 1);
    // f without --d is a usage error.
    let out = run(&["factor", "f", "3"]);
    assert_eq!(out.status.code(), Some(2));
    // Quotients below their domain are usage errors.
    let out = run(&["factor", "qd", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unwritable_cache_dir_is_internal_error() {
    let out = run(&["compute", "num", "3", "--cache-dir", "/proc/no-such-dir/x"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn cache_round_trip_is_bit_identical() {
    let dir = temp_dir("roundtrip");
    let first = run_with_cache(&["compute", "num", "5"], &dir);
    assert!(first.status.success());
    // One cache entry written.
    let entries: Vec<_> = std::fs::read_dir(&dir).unwrap().collect();
    assert_eq!(entries.len(), 1);
    // A fresh process serves the identical bytes from cache.
    let second = run_with_cache(&["compute", "num", "5"], &dir);
    assert_eq!(first.stdout, second.stdout);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn corrupted_cache_entry_recomputes() {
    let dir = temp_dir("corrupt");
    let first = run_with_cache(&["compute", "num", "4"], &dir);
    let entry = std::fs::read_dir(&dir).unwrap().next().unwrap().unwrap();
    let mangled = std::fs::read_to_string(entry.path())
        .unwrap()
        .replace("\"5\"", "\"6\"");
    std::fs::write(entry.path(), mangled).unwrap();
    let second = run_with_cache(&["compute", "num", "4"], &dir);
    assert!(second.status.success());
    assert_eq!(first.stdout, second.stdout);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn bfile_comparison() {
    let dir = temp_dir("bfile");
    // s(n) for 1..8: 1 3 3 7 5 9 7 15.
    let good = dir.join("good.txt");
    std::fs::write(
        &good,
        "# derived sequence\n1 1\n2 3\n3 3\n4 7\n5 5\n6 9\n7 7\n8 15\n",
    )
    .unwrap();
    let out = bin()
        .args(["check", "--bfile"])
        .arg(&good)
        .args(["--sequence", "s"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_lines(&out).len(), 8);

    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "1 1\n2 3\n3 999\n").unwrap();
    let out = bin()
        .args(["check", "--bfile"])
        .arg(&bad)
        .args(["--sequence", "s"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let lines = stdout_lines(&out);
    let last: serde_json::Value = serde_json::from_str(&lines[2]).unwrap();
    assert_eq!(last["status"], "fail");
    assert_eq!(last["computed"], "3");
    assert_eq!(last["expected"], "999");

    // --bfile without --sequence is a usage error.
    let out = bin()
        .args(["check", "--bfile"])
        .arg(&good)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn bfile_range_bounds_apply() {
    let dir = temp_dir("bfile-range");
    let path = dir.join("b.txt");
    // B(n) for 0..6: 1 1 2 2 4 4 6.
    std::fs::write(&path, "0 1\n1 1\n2 2\n3 2\n4 4\n5 4\n6 6\n").unwrap();
    let out = bin()
        .args(["check", "all", "2", "5", "--bfile"])
        .arg(&path)
        .args(["--sequence", "b-count"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_lines(&out).len(), 4);
    let _ = std::fs::remove_dir_all(&dir);
}
