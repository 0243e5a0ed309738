use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const RANGE3: &str = "GF 3 1\nMAT 2 2\n1 1\n1 2\n";
const IDENTITY2: &str = "GF 3 1\nMAT 2 2\n1 0\n0 1\n";
const RANGE9: &str = "GF 3 2 1 0 1\nMAT 6 6\n1 1 1 1 1 1\n1 2 3 4 5 6\n1 3 2 6 7 4\n1 4 8 5 6 7\n1 5 6 3 8 2\n1 6 5 2 4 3\n";
const REST_AONT_1: &str =
    "GF 5 1\nMAT 6 6\n0 1 1 1 1 1\n1 0 1 2 3 4\n0 0 1 0 0 0\n0 0 0 1 0 0\n0 0 0 0 1 0\n0 0 0 0 0 1\n";

fn aont(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aont")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn records(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap_or_else(|e| panic!("bad record {l:?}: {e}")))
        .collect()
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_range3_both() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "range3.mat", RANGE3);
    let out = aont(&["--json", "verify", s(&p), "strong t=2", "both"]);
    assert_eq!(code(&out), 0);
    let recs = records(&out);
    assert_eq!(recs.len(), 2);
    for r in &recs {
        assert_eq!(r["claim"], "strong t=2");
        assert_eq!(r["verdict"], true);
        assert!(r["witness_columns"].is_null());
    }
    assert_eq!(recs[0]["method"], "criterion");
    assert_eq!(recs[1]["method"], "bruteforce");
}

#[test]
fn verify_identity_reports_zero_entry() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "identity2_gf3.mat", IDENTITY2);
    let out = aont(&["--json", "verify", s(&p), "aont t=1", "criterion"]);
    assert_eq!(code(&out), 1);
    let r = &records(&out)[0];
    assert_eq!(r["verdict"], false);
    assert_eq!(r["witness_rows"], serde_json::json!([1]));
    assert_eq!(r["witness_columns"], serde_json::json!([2]));

    let out = aont(&["--json", "verify", s(&p), "aont t=1", "bruteforce"]);
    assert_eq!(code(&out), 1);
    let r = &records(&out)[0];
    assert_eq!(r["witness_columns"], serde_json::json!([1, 3]));
    assert_eq!(r["witness_tuple"], serde_json::json!([0, 0]));
    assert_eq!(r["counts"]["observed"], 3);
    assert_eq!(r["counts"]["expected"], 1);
}

#[test]
fn verify_restricted_example() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "restaont1.mat", REST_AONT_1);
    let out = aont(&["verify", s(&p), "restricted R={1,2} t=2", "both"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn verify_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "range3.mat", RANGE3);
    assert_eq!(code(&aont(&["verify", s(&p), "strong t=", "both"])), 2);
    let bad = file(&dir, "bad.mat", "GF 3 1\nMAT 2 2\n1 1\n");
    let out = aont(&["verify", s(&bad), "strong t=2"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));
    assert_eq!(code(&aont(&["verify", "/nonexistent/file.mat", "strong t=2"])), 2);

    let arr = dir.path().join("range3.arr");
    assert_eq!(code(&aont(&["convert", s(&p), "--to", "array", "--out", s(&arr)])), 0);
    let out = aont(&["verify", s(&arr), "strong t=2", "criterion"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("method mismatch"));
    assert_eq!(code(&aont(&["verify", s(&arr), "strong t=2", "bruteforce"])), 0);
}

#[test]
fn brute_force_respects_cell_cap() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "range9.mat", RANGE9);
    let out = aont(&["--cell-cap", "1000", "verify", s(&p), "strong t=2", "bruteforce"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
    let out = Command::new(env!("CARGO_BIN_EXE_aont"))
        .env("AONT_CELL_CAP", "1000")
        .args(["verify", s(&p), "strong t=2", "bruteforce"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    assert_eq!(code(&aont(&["verify", s(&p), "strong t=2", "criterion"])), 0);
}

#[test]
fn construct_then_verify() {
    let dir = TempDir::new().unwrap();
    let v = dir.path().join("v4.mat");
    assert_eq!(code(&aont(&["construct", "vandermonde", "--q", "4", "--all-nonzero", "--out", s(&v)])), 0);
    assert_eq!(code(&aont(&["verify", s(&v), "strong t=2"])), 0);

    let rs = dir.path().join("rs.mat");
    assert_eq!(code(&aont(&["construct", "rs-doubly", "--q", "5", "--t", "2", "--out", s(&rs)])), 0);
    assert_eq!(code(&aont(&["verify", s(&rs), "restricted R={1,2} t=2", "both"])), 0);

    let tr = dir.path().join("tr.mat");
    assert_eq!(code(&aont(&["construct", "rs-triply", "--n", "2", "--out", s(&tr)])), 0);
    assert_eq!(code(&aont(&["verify", s(&tr), "restricted R={1,2,3} t=3", "both"])), 0);

    let c = dir.path().join("c.mat");
    assert_eq!(code(&aont(&["construct", "cauchy", "--q", "7", "--s", "3", "--out", s(&c)])), 0);
    assert_eq!(code(&aont(&["verify", s(&c), "strong t=3", "both"])), 0);

    let oa = dir.path().join("oa.arr");
    assert_eq!(code(&aont(&["construct", "oa-rs", "--q", "3", "--s", "2", "--k", "4", "--out", s(&oa)])), 0);
    assert_eq!(code(&aont(&["verify", s(&oa), "oa strength=2", "bruteforce"])), 0);
    assert_eq!(code(&aont(&["verify", s(&oa), "range t1=1 t2=2", "bruteforce"])), 0);
}

#[test]
fn construct_errors() {
    let out = aont(&["construct", "cauchy", "--q", "3", "--r", "0,1", "--c", "2,0"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("repeat"));
    assert_eq!(code(&aont(&["construct", "rs-doubly", "--q", "5", "--t", "7"])), 2);
    assert_eq!(code(&aont(&["construct", "rs-doubly", "--q", "6", "--t", "2"])), 2);
    assert_eq!(code(&aont(&["construct", "rs-doubly", "--q", "5"])), 2);
}

#[test]
fn dm_and_shrink_round_trip() {
    let dir = TempDir::new().unwrap();
    let v = dir.path().join("v4.mat");
    let dm = dir.path().join("v4.dm");
    let back = dir.path().join("back.mat");
    assert_eq!(code(&aont(&["construct", "vandermonde", "--q", "4", "--all-nonzero", "--out", s(&v)])), 0);
    assert_eq!(code(&aont(&["construct", "strong-to-dm", "--input", s(&v), "--out", s(&dm)])), 0);
    assert_eq!(fs::read_to_string(&dm).unwrap(), "DM 3 3 1\n0 0 0\n0 1 2\n0 2 1\n");
    assert_eq!(code(&aont(&["construct", "dm-to-matrix", "--q", "4", "--input", s(&dm), "--out", s(&back)])), 0);
    assert_eq!(fs::read_to_string(&back).unwrap(), fs::read_to_string(&v).unwrap());

    let r7 = file(
        &dir,
        "range7.mat",
        "GF 7 1\nMAT 5 5\n1 1 1 1 1\n1 2 3 4 5\n1 3 4 5 6\n1 4 5 6 2\n1 5 6 2 4\n",
    );
    let last = dir.path().join("last.mat");
    let args = ["--json", "construct", "shrink", "--input", s(&r7), "--row", "5", "--col", "5", "--out", s(&last)];
    let out = aont(&args);
    assert_eq!(code(&out), 0);
    let note = records(&out)[0]["verified"].as_str().unwrap().to_string();
    assert_eq!(note, "submatrices up to 2x2 invertible: true; invertible: false");
    // the minors survive but the determinant does not
    assert_eq!(code(&aont(&["verify", s(&last), "strong t=2", "criterion"])), 1);

    let small = dir.path().join("small.mat");
    assert_eq!(code(&aont(&["construct", "shrink", "--input", s(&r7), "--out", s(&small)])), 0);
    assert_eq!(code(&aont(&["verify", s(&small), "strong t=2", "both"])), 0);
}

#[test]
fn search_examples() {
    let out = aont(&["--json", "search", "--q", "5", "--max"]);
    assert_eq!(code(&out), 0);
    let recs = records(&out);
    let last = recs.last().unwrap();
    assert_eq!(last["record"], "max");
    assert_eq!(last["value"], 3);
    assert!(last["witnesses"].as_array().unwrap().iter().any(|w| w["s"] == 3));

    let out = aont(&["--json", "search", "--q", "3", "--exists", "--s", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(records(&out)[0]["outcome"], "exhausted_none");

    let out = aont(&["--json", "search", "--q", "7", "--exists", "--s", "6"]);
    assert_eq!(code(&out), 3);
    assert_eq!(records(&out)[0]["outcome"], "aborted_cap");

    let dir = TempDir::new().unwrap();
    let w = file(&dir, "range9.mat", RANGE9);
    let out = aont(&["--json", "search", "--q", "9", "--max", "--witness", s(&w)]);
    assert_eq!(code(&out), 3);
    let last = records(&out).pop().unwrap();
    assert!(last["value"].is_null());
    assert_eq!(last["interval"], serde_json::json!([6, 7]));

    assert_eq!(code(&aont(&["search", "--q", "6", "--max"])), 2);
    assert_eq!(code(&aont(&["search", "--q", "5"])), 2);
}

#[test]
fn search_job_count_is_deterministic() {
    let one = records(&aont(&["--json", "--jobs", "1", "search", "--q", "7", "--exists", "--s", "4"]));
    let four = records(&aont(&["--json", "--jobs", "4", "search", "--q", "7", "--exists", "--s", "4"]));
    for key in ["outcome", "witness", "candidates_examined", "nodes"] {
        assert_eq!(one[0][key], four[0][key], "{key}");
    }
}

#[test]
fn bounds_report() {
    let out = aont(&["--json", "bounds", "--q", "7"]);
    assert_eq!(code(&out), 0);
    let r = &records(&out)[0];
    assert_eq!(r["upper"], 5);
    assert_eq!(r["lower"], 3);
    assert_eq!(r["bush"], 7);
    let out = aont(&["--json", "bounds", "--q", "4"]);
    assert_eq!(records(&out)[0]["lower"], 3);
}

#[test]
fn convert_canonical_round_trip() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "range9.mat", RANGE9);
    let out = aont(&["convert", s(&p)]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8_lossy(&out.stdout), RANGE9);

    let messy = file(&dir, "messy.mat", "GF  3 1\nMAT 2 2\n1   1\n1 2\n\n");
    assert_eq!(String::from_utf8_lossy(&aont(&["convert", s(&messy)]).stdout), RANGE3);

    let inv = aont(&["convert", s(&p), "--to", "swapped"]);
    let fwd = aont(&["convert", s(&p), "--to", "array", "--direction", "forward"]);
    assert_eq!(inv.stdout, fwd.stdout);
}
