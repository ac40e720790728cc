use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use clap::Parser;
use linkforge_cli::{run, RunConfig, Status};
use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linkforge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("linkforge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn summary(o: &Output) -> Value {
    let text = String::from_utf8_lossy(&o.stderr);
    serde_json::from_str(text.lines().last().expect("summary line")).expect("summary is JSON")
}

#[test]
fn bundled_fixtures_match_the_generators() {
    for (name, file) in [
        ("trefoil", "trefoil.json"),
        ("figure-eight", "figure_eight.json"),
        ("hopf", "hopf.json"),
    ] {
        let o = bin(&["gen", "fixture", name]);
        assert_eq!(o.status.code(), Some(0));
        let bundled = std::fs::read(fixture(file)).unwrap();
        assert_eq!(o.stdout, bundled, "{file} is stale");
    }
}

#[test]
fn invariants_of_bundled_fixtures() {
    let t = fixture("trefoil.json");
    let o = bin(&["invariant", "a2", "-i", t.to_str().unwrap(), "--skein"]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(
        (v["a2"].as_i64(), v["skein_a2"].as_i64()),
        (Some(1), Some(1))
    );

    let f = fixture("figure_eight.json");
    let o = bin(&["invariant", "a2", "-i", f.to_str().unwrap()]);
    assert_eq!(stdout_json(&o)["a2"], -1);

    let h = fixture("hopf.json");
    let o = bin(&["invariant", "lk", "-i", h.to_str().unwrap()]);
    assert_eq!(stdout_json(&o)["lk"].as_i64().unwrap().abs(), 1);
    let o = bin(&["invariant", "matrix", "-i", h.to_str().unwrap()]);
    assert_eq!(stdout_json(&o)["entries"][0][1].as_i64().unwrap().abs(), 1);
}

#[test]
fn cg6_reports_fifty_passes() {
    let o = bin(&["verify", "cg6", "--trials", "50", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let r = stdout_json(&o);
    assert_eq!(r["passes"], 50);
    assert_eq!(summary(&o)["status"], "pass");
}

#[test]
fn torus_to_knot_pipeline() {
    let t = tmp("torus13.json");
    let o = bin(&[
        "gen",
        "torus",
        "--c",
        "13",
        "--lambda",
        "4",
        "-o",
        t.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = bin(&[
        "construct",
        "knot-extract",
        "-i",
        t.to_str().unwrap(),
        "--lambda",
        "4",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let r = stdout_json(&o);
    assert!(r["result"]["a2"].as_i64().unwrap().abs() >= 1);
    assert!(r["result"]["lk_a"][0].as_i64().unwrap().abs() >= 4);
    assert_eq!(summary(&o)["command"], "construct knot-extract");
}

#[test]
fn exit_codes() {
    // usage: randomized command without a seed
    let o = bin(&["verify", "cg6", "--trials", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(summary(&o)["code"], "USAGE");
    // usage: clap rejects a malformed selection
    assert_eq!(
        bin(&["construct", "wprime", "--a", "x"]).status.code(),
        Some(2)
    );
    // hypothesis: too few L's
    let t = tmp("torus44.json");
    bin(&[
        "gen",
        "torus",
        "--c",
        "44",
        "--lambda",
        "1",
        "-o",
        t.to_str().unwrap(),
    ]);
    let o = bin(&[
        "construct",
        "multijoin",
        "-i",
        t.to_str().unwrap(),
        "--j",
        "0..6",
        "--l",
        "6..41",
        "--x",
        "42",
        "--y",
        "43",
        "--lambda",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(summary(&o)["code"], "HYPOTHESIS_VIOLATION");
    // verification failure: absent pattern
    let k = tmp("keyring.json");
    let p = tmp("keyring-pattern.json");
    bin(&["gen", "keyring", "--keys", "3", "-o", k.to_str().unwrap()]);
    bin(&[
        "pattern",
        "extract",
        "-i",
        k.to_str().unwrap(),
        "-o",
        p.to_str().unwrap(),
    ]);
    let o = bin(&[
        "pattern",
        "query",
        "-i",
        p.to_str().unwrap(),
        "--shape",
        "bipartite",
        "-n",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let o = bin(&[
        "pattern",
        "query",
        "-i",
        p.to_str().unwrap(),
        "--shape",
        "bipartite",
        "-n",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    // missing input file
    assert_eq!(
        bin(&["invariant", "matrix", "-i", "/nonexistent.json"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn thread_variable() {
    let o = Command::new(env!("CARGO_BIN_EXE_linkforge"))
        .args(["verify", "cg6", "--trials", "4", "--seed", "2"])
        .env("LINKFORGE_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_linkforge"))
        .args(["verify", "cg6", "--trials", "4", "--seed", "2"])
        .env("LINKFORGE_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn synthetic_ramsey_and_pattern() {
    let spec = tmp("synthetic.json");
    std::fs::write(
        &spec,
        r#"{"components": 6, "pairs": [[0,1,2],[0,2,1],[1,2,3],[3,4,-1],[3,5,-1],[4,5,-2]]}"#,
    )
    .unwrap();
    let s = spec.to_str().unwrap();
    let o = bin(&[
        "construct",
        "ramsey",
        "--mode",
        "synthetic",
        "-i",
        s,
        "-n",
        "3",
    ]);
    // the pattern is not complete, so no monochromatic K3 over all six
    assert_eq!(o.status.code(), Some(1));
    let o = bin(&[
        "construct",
        "ramsey",
        "--mode",
        "synthetic",
        "-i",
        s,
        "-n",
        "3",
        "--components",
        "0..3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout_json(&o)["result"]["sign"], 1);
    let o = bin(&[
        "pattern",
        "extract",
        "--mode",
        "synthetic",
        "-i",
        s,
        "--format",
        "dot",
    ]);
    let dot = String::from_utf8(o.stdout).unwrap();
    assert!(dot.contains("v1 -- v2 [label=\"3\"]"));
}

#[test]
fn identical_configs_give_identical_bytes() {
    let args = ["linkforge", "verify", "ty", "--trials", "5", "--seed", "9"];
    let a = run(&RunConfig::parse_from(args));
    let b = run(&RunConfig::parse_from(args));
    assert_eq!(a.status, Status::Pass);
    assert_eq!(a.artifact, b.artifact);
    let c = run(&RunConfig::parse_from([
        "linkforge",
        "verify",
        "ty",
        "--trials",
        "5",
        "--seed",
        "10",
    ]));
    assert_ne!(a.artifact, c.artifact);
}
