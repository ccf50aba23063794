use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sl2fusion"))
}

fn run(args: &[&str]) -> (i32, String) {
    let out = bin().args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn run_json(args: &[&str]) -> Value {
    let (code, stdout) = run(args);
    assert_eq!(code, 0, "{args:?}");
    serde_json::from_str(&stdout).unwrap()
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../golden")
}

#[test]
fn golden_files_match() {
    let manifest: Value =
        serde_json::from_str(&std::fs::read_to_string(golden_dir().join("manifest.json")).unwrap()).unwrap();
    let entries = manifest.as_array().unwrap();
    assert!(!entries.is_empty());
    for e in entries {
        let file = e["file"].as_str().unwrap();
        let args: Vec<&str> = e["args"].as_array().unwrap().iter().map(|a| a.as_str().unwrap()).collect();
        let (code, stdout) = run(&args);
        assert_eq!(code as u64, e["exit"].as_u64().unwrap(), "{file}");
        let expected = std::fs::read_to_string(golden_dir().join(file)).unwrap();
        assert_eq!(stdout, expected, "{file} drifted");
    }
}

#[test]
fn golden_command_reproduces_the_checked_in_directory() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _) = run(&["golden", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    for entry in std::fs::read_dir(golden_dir()).unwrap() {
        let entry = entry.unwrap();
        let fresh = std::fs::read(dir.path().join(entry.file_name())).unwrap();
        assert_eq!(fresh, std::fs::read(entry.path()).unwrap(), "{:?}", entry.file_name());
    }
}

#[test]
fn recurrence_for_two_twos() {
    let v = run_json(&["char", "--route", "recurrence", "--A", "2,2"]);
    assert_eq!(v["entries"], serde_json::json!([[0, 0, 1], [1, 0, 1], [1, 1, 1], [2, 2, 1]]));
    assert_eq!(v["total"], 4);
}

#[test]
fn quotient_at_origin() {
    let v = run_json(&["char", "--route", "quotient", "--family", "I0", "--A", "1,2"]);
    assert_eq!(v["zdims"], serde_json::json!([1, 1]));
}

#[test]
fn routes_agree_on_a_small_multiset() {
    let entries = |route: &str| {
        let mut args = vec!["char", "--route", route, "--A", "1,3"];
        if route == "quotient" {
            args.extend(["--family", "JA"]);
        }
        run_json(&args)["entries"].clone()
    };
    let reference = entries("recurrence");
    for route in ["closed", "quotient", "dual"] {
        assert_eq!(entries(route), reference, "{route}");
    }
}

#[test]
fn distinct_points_give_z_grading_only() {
    let v = run_json(&["char", "--route", "quotient", "--family", "JAT", "--A", "2,2", "--T", "1,-1"]);
    assert_eq!(v["grading"], "z");
    assert_eq!(v["total"], 4);
}

#[test]
fn tsv_output() {
    let (code, out) = run(&["char", "--route", "recurrence", "--A", "2,2", "--format", "tsv"]);
    assert_eq!(code, 0);
    assert_eq!(out, "k\ts\tdim\n0\t0\t1\n1\t0\t1\n1\t1\t1\n2\t2\t1\n");
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--suite", "prop24", "--max-sum", "4"];
    assert_eq!(run(&args), run(&args));
}

#[test]
fn verify_passes() {
    let v = run_json(&["verify", "--suite", "thm31", "--max-sum", "4"]);
    assert_eq!(v["passed"], true);
    assert!(v["instances"].as_u64().unwrap() > 0);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["char", "--route", "recurrence"][..],
        &["char", "--route", "recurrence", "--A", "2,0"],
        &["char", "--route", "nonsense", "--A", "2"],
        &["fusion", "--A", "2,2", "--Z", "1,1"],
        &["fusion", "--A", "2,2", "--Z", "preset:nope"],
        &["funcmodel", "--A", "1,1,1,1"],
    ] {
        assert_eq!(run(args).0, 2, "{args:?}");
    }
}

#[test]
fn timing_goes_to_stderr() {
    let out = bin().args(["char", "--route", "recurrence", "--A", "1"]).output().unwrap();
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("elapsed_ms"));
    assert!(!String::from_utf8(out.stdout).unwrap().contains("elapsed_ms"));
}
