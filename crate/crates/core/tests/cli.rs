use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nmds")).args(args).env("NMDS_CACHE_DIR", cache).output().unwrap()
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn field_info_and_argument_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["ff", "--p", "3", "--m", "3"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["modulus_poly"], "x^3 + 2x + 1");
    assert!(report["meta"]["timestamp"].is_u64());
    let out = run(&["ff", "--p", "3", "--m", "1"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(run(&["ff", "--p", "4", "--m", "1"], dir.path()).status.code(), Some(2));
    assert_eq!(run(&["ff", "--p", "3"], dir.path()).status.code(), Some(2));
    assert_eq!(run(&["certify", "--m", "2", "--mode", "pairs"], dir.path()).status.code(), Some(2));
    assert_eq!(run(&["conjecture", "--m", "4"], dir.path()).status.code(), Some(2));
    assert_eq!(run(&["bch", "--m", "3", "--n", "13", "--delta", "3", "--h", "1"], dir.path()).status.code(), Some(2));
    assert_eq!(run(&["certify", "--m", "3", "--jobs", "0"], dir.path()).status.code(), Some(2));
}

#[test]
fn build_analyze_certify() {
    let dir = tempfile::tempdir().unwrap();
    let code = dir.path().join("c27.json");
    let out = run(&["bch", "--m", "3", "--delta", "3", "--h", "4", "--out", code.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&code)["k"], 24);

    let report = dir.path().join("analysis.json");
    let args = ["analyze", code.to_str().unwrap(), "--classify", "--census", "--out", report.to_str().unwrap()];
    assert_eq!(run(&args, dir.path()).status.code(), Some(0));
    let r = json(&report);
    assert_eq!(r["classification"], "NMDS");
    let census = &r["census"];
    assert_eq!(census["f1"].as_u64().unwrap() + census["f2"].as_u64().unwrap(), 98280);

    let args = ["analyze", code.to_str().unwrap(), "--weights", "--strategy", "direct"];
    assert_eq!(run(&args, dir.path()).status.code(), Some(2));

    let out = run(&["certify", code.to_str().unwrap(), "--mode", "both", "--scan"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["generic"]["subsets_checked"], 98280);
    assert_eq!(r["pairs"]["pairs_checked"], 351);

    let narrow = dir.path().join("narrow.json");
    let args = ["bch", "--m", "3", "--delta", "3", "--h", "1", "--out", narrow.to_str().unwrap()];
    assert_eq!(run(&args, dir.path()).status.code(), Some(0));
    assert_eq!(json(&narrow)["h"], 1);
}

#[test]
fn failing_certification_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let code = dir.path().join("c9.json");
    fs::write(
        &code,
        r#"{"p": 3, "m": 2, "n": 10, "delta": null, "h": null, "generator": [2, 5, 0, 7, 1], "k": 6, "d": null}"#,
    )
    .unwrap();
    let out = run(&["certify", code.to_str().unwrap(), "--mode", "generic"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["pass"], false);
    assert_eq!(r["generic"]["failures"][0]["dim"], 2);
    let out = run(&["analyze", code.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["classification"], "AMDS");

    fs::write(&code, "{not json").unwrap();
    assert_eq!(run(&["analyze", code.to_str().unwrap()], dir.path()).status.code(), Some(2));
}

#[test]
fn deterministic_reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for (path, jobs) in [(&a, "1"), (&b, "3")] {
        let args = [
            "conjecture",
            "--m",
            "3",
            "--deterministic",
            "--seed",
            "5",
            "--jobs",
            jobs,
            "--out",
            path.to_str().unwrap(),
        ];
        assert_eq!(run(&args, dir.path()).status.code(), Some(0));
    }
    let (ta, tb) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let r = json(&a);
    assert_eq!(r["pass"], true);
    assert_eq!(r["complete"], true);
    assert_eq!(r["meta"]["seed"], 5);
    assert!(r["meta"].get("timestamp").is_none());
    assert_eq!(r["weights"]["5"], "2044224");
}

#[test]
fn field_cache_is_written_and_validated() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    assert_eq!(run(&["ff", "--p", "3", "--m", "5"], &cache).status.code(), Some(0));
    let text = fs::read_to_string(cache.join("fields.txt")).unwrap();
    assert!(!text.trim().is_empty());
    assert_eq!(run(&["ff", "--p", "3", "--m", "5"], &cache).status.code(), Some(0));
    fs::write(cache.join("fields.txt"), "3 5 1 1 1 1 1 1\n").unwrap();
    assert_eq!(run(&["ff", "--p", "3", "--m", "5"], &cache).status.code(), Some(2));
}
