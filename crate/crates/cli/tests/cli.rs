use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_nonunital"));
    c.env_remove("NONUNITAL_SCHEME_DIR");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn schemes_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/schemes")
}

#[test]
fn construct_paley_tournament_11() {
    let out = run(&["construct", "--paley-tournament", "11", "--case", "i"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["length"], 22);
    assert_eq!(r["d_hamming"], 6);
    assert_eq!(r["qsd"], true);
    assert_eq!(r["typeiv"], true);

    let out = run(&["construct", "--paley-tournament", "11", "--variant", "bordered", "--case", "ii"]);
    let r = json(&out);
    assert_eq!((r["length"].as_u64(), r["d_hamming"].as_u64()), (Some(24), Some(8)));
}

#[test]
fn t8_and_chang_files_differ() {
    let dir = schemes_dir();
    let t8 = dir.join("srg-28-12-6-4-t8.g6");
    let chang = dir.join("srg-28-12-6-4-chang1.g6");
    for (file, d) in [(t8, 6), (chang, 8)] {
        let out = run(&["construct", "--graph6", file.to_str().unwrap(), "--variant", "pure", "--case", "ii"]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(json(&out)["d_hamming"], d, "{}", file.display());
    }
}

#[test]
fn manifest_names_resolve_through_env() {
    let out = bin()
        .env("NONUNITAL_SCHEME_DIR", schemes_dir())
        .args(["construct", "--scheme", "t8", "--variant", "pure", "--case", "ii"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json(&out);
    assert_eq!((r["length"].as_u64(), r["d_hamming"].as_u64()), (Some(56), Some(6)));
    assert!(r["scheme"]["origin"].as_str().unwrap().contains("manifest"));
}

#[test]
fn request_file_and_cm_warning() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("req.json");
    std::fs::write(&path, r#"{"scheme": "pentagon", "variant": "cm", "x": "c", "y": "a"}"#).unwrap();
    let out = run(&["construct", "--request", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert!(r["warnings"].as_array().unwrap().iter().any(|w| w.as_str().unwrap().starts_with("degenerate")));
}

#[test]
fn reproduce_exit_codes() {
    let out = run(&["reproduce", "example1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["failed"], 0);
    // no Type IV code has length 1, so the bound comparison fails there
    let out = run(&["reproduce", "bounds"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json(&out)["failed"].as_u64().unwrap() >= 1);
}

#[test]
fn bad_inputs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.g6");
    std::fs::write(&bad, "not graph6 \u{7f}\n").unwrap();
    let out = run(&["construct", "--graph6", bad.to_str().unwrap(), "--case", "i"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err["error"].is_string());

    let missing = dir.path().join("missing.txt");
    assert_eq!(run(&["analyze", missing.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["construct", "--paley-graph", "7", "--case", "i"]).status.code(), Some(2));
    assert_eq!(run(&["construct", "--paley-graph", "5"]).status.code(), Some(2));
    // clap usage errors
    assert_eq!(run(&["construct", "--paley-graph", "5", "--variant", "odd"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn ingest_expect() {
    let g = schemes_dir().join("srg-27-10-1-5.g6");
    let out = run(&["ingest", g.to_str().unwrap(), "--expect", "27,10,1,5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)[0]["params"]["mu"], 5);
    assert_eq!(run(&["ingest", g.to_str().unwrap(), "--expect", "27,10,1,4"]).status.code(), Some(1));

    let dir = tempfile::tempdir().unwrap();
    let not_srg = dir.path().join("path.txt");
    std::fs::write(&not_srg, "3 3\n010\n101\n010\n").unwrap();
    assert_eq!(run(&["ingest", not_srg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn analyze_and_export_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let gen = dir.path().join("gen.txt");
    let out = run(&["construct", "--paley-tournament", "7", "--case", "i", "--output", gen.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let built = json(&out);

    let out = run(&["analyze", gen.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let analysed = json(&out);
    for key in ["length", "log2_size", "d_hamming", "qsd", "typeiv"] {
        assert_eq!(built[key], analysed[key], "{key}");
    }

    let f4 = dir.path().join("f4.txt");
    let out = run(&["export-f4", "--input", gen.to_str().unwrap(), "--output", f4.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&f4).unwrap();
    assert!(text.starts_with("14 14\n"), "{text}");
    let e: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("f4.txt.enum.json")).unwrap()).unwrap();
    assert_eq!(e["agree"], true);
    assert_eq!(e["f4_hamming"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).sum::<u64>(), 1 << 14);
}

#[test]
fn verify_ring_and_table_output() {
    let out = run(&["--table", "verify", "ring"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 5);

    let out = run(&["ring-table"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("a a 0 c b"));
}

#[test]
fn enumeration_cap_is_honoured() {
    let out = run(&["--max-enumeration", "4", "construct", "--paley-tournament", "11", "--case", "i", "--enumerate"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json(&out);
    assert!(r["enumerator"].is_null());
    assert_eq!(r["d_hamming"], 6);
}

#[test]
fn zero_code_exports_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let gen = dir.path().join("zero.txt");
    std::fs::write(&gen, "000\n").unwrap();
    let f4 = dir.path().join("zero.f4");
    let out = run(&["export-f4", "--input", gen.to_str().unwrap(), "--output", f4.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&f4).unwrap(), "0 3\n");
}
