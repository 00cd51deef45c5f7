//! The command-line binary: output, exit codes and caching.

use std::process::Command;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_z2mackey")).args(args).env_remove("Z2MACKEY_CACHE_DIR").output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn single_cell_chart() {
    let (code, out) = run(&["chart", "--window", "0..0,0..0", "--coeff", "Z"]);
    assert_eq!(code, 0);
    assert!(out.contains("ℤ̲"), "{out}");
}

#[test]
fn f2_chart_symbols() {
    let (code, out) = run(&["chart", "--coeff", "F2", "--format", "ascii"]);
    assert_eq!(code, 0);
    for s in ["𝔽̲", "L_−", "•", " L "] {
        assert!(out.contains(s), "{s} missing");
    }
}

#[test]
fn chart_json_and_svg() {
    let (code, out) = run(&["chart", "--coeff", "Z", "--window", "-2..2,-2..2", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["window"], serde_json::json!([-2, 2, -2, 2]));
    let (code, out) = run(&["chart", "--coeff", "Z", "--window", "-2..2,-2..2", "--format", "svg"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("<svg"));
}

#[test]
fn ko_table() {
    let (code, out) = run(&["ko", "--n", "1", "--stems", "0..7"]);
    assert_eq!(code, 0);
    assert!(!out.contains("MISMATCH"));
    let groups: Vec<&str> = out.lines().skip(1).map(|l| l.rsplit("/ ").next().unwrap().split(' ').next().unwrap()).collect();
    assert_eq!(groups, ["ℤ", "𝔽", "𝔽", "0", "ℤ", "0", "0", "0"]);
}

#[test]
fn ss_pages() {
    let (code, out) = run(&["ss", "--n", "1", "--window", "-2..4,-2..2", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let pages = v["pages"].as_array().unwrap();
    assert_eq!(pages.len(), 3);
    assert_eq!(pages[0]["r"], 3);
    assert_eq!(pages[2]["r"], "infinity");
}

#[test]
fn box_and_dual() {
    let (code, out) = run(&["box", "--coeff", "A", "--coeff", "F2"]);
    assert_eq!(code, 0);
    assert!(out.contains("A ⊠ 𝔽̲ = 𝔽̲"), "{out}");
    let (code, out) = run(&["dual", "--coeff", "Z"]);
    assert_eq!(code, 0);
    assert!(out.contains("∇ℤ̲ = ℤ̲^op"), "{out}");
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["chart", "--window", "0..0"]).0, 2);
    assert_eq!(run(&["chart", "--coeff", "Q"]).0, 2);
    assert_eq!(run(&["ko", "--n", "0"]).0, 2);
    assert_eq!(run(&["dual", "--format", "svg"]).0, 2);
    assert_eq!(run(&[]).0, 2);
}

#[test]
fn deterministic_and_cached() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["chart", "--coeff", "F2", "--window", "-3..3,-3..3", "--format", "json"];
    let cold = run(&args);
    let mut with_cache: Vec<&str> = args.to_vec();
    with_cache.extend(["--cache-dir", d]);
    let first = run(&with_cache);
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
    let second = run(&with_cache);
    assert_eq!(cold, first);
    assert_eq!(first, second);
    // the environment variable selects the same cache
    let out = Command::new(env!("CARGO_BIN_EXE_z2mackey")).args(args).env("Z2MACKEY_CACHE_DIR", d).output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), cold.1);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}
