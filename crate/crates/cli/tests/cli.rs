use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn setwl(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_setwl"))
        .current_dir(dir)
        .env_remove("SETWL_THREADS")
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn workdir() -> TempDir {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("p3.el"), "3 2\n0 1\n1 2\n").unwrap();
    fs::write(
        dir.path().join("c6.el"),
        "6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n",
    )
    .unwrap();
    fs::write(
        dir.path().join("2c3.el"),
        "6 6\n0 1\n1 2\n2 0\n3 4\n4 5\n5 3\n",
    )
    .unwrap();
    dir
}

#[test]
fn build_stats_reports_layer_sizes() {
    let dir = workdir();
    let v = json(&setwl(
        dir.path(),
        &[
            "build", "--input", "p3.el", "--k", "2", "--c", "1", "--stats",
        ],
    ));
    assert_eq!(v["set_counts"], serde_json::json!([3, 2]));
}

#[test]
fn build_export_carries_initial_colors() {
    let dir = workdir();
    let v = json(&setwl(
        dir.path(),
        &["build", "--input", "p3.el", "--k", "2", "--c", "1"],
    ));
    assert_eq!(v["layers"].as_array().unwrap().len(), 2);
    assert_eq!(v["initColors"][1].as_array().unwrap().len(), 2);
    let bare = json(&setwl(
        dir.path(),
        &[
            "build",
            "--input",
            "p3.el",
            "--k",
            "2",
            "--c",
            "1",
            "--no-init-colors",
        ],
    ));
    assert!(bare.get("initColors").is_none_or(Value::is_null));
}

#[test]
fn build_writes_to_file() {
    let dir = workdir();
    let out = setwl(
        dir.path(),
        &[
            "build", "--input", "p3.el", "--k", "2", "--c", "2", "--stats", "--output", "s.json",
        ],
    );
    assert!(out.status.success());
    let v: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("s.json")).unwrap()).unwrap();
    assert_eq!(v["total_sets"], 6);
}

#[test]
fn distinguish_hexagon_from_two_triangles() {
    let dir = workdir();
    let v = json(&setwl(
        dir.path(),
        &[
            "distinguish",
            "--a",
            "c6.el",
            "--b",
            "2c3.el",
            "--k",
            "3",
            "--c",
            "2",
        ],
    ));
    assert_eq!(v["verdict"], "distinguished");
    assert_eq!(v["iteration"], 0);
}

#[test]
fn indistinguishable_verdict_still_exits_zero() {
    let dir = workdir();
    let out = setwl(
        dir.path(),
        &[
            "distinguish",
            "--a",
            "c6.el",
            "--b",
            "2c3.el",
            "--k",
            "1",
            "--c",
            "1",
            "--variant",
            "one-wl",
        ],
    );
    assert_eq!(json(&out)["verdict"], "indistinguishable");
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn cfi_writes_pair_and_sidecar() {
    let dir = workdir();
    let v = json(&setwl(
        dir.path(),
        &["cfi", "--k", "3", "--out-prefix", "cfi3", "--sweep-c"],
    ));
    assert_eq!(v["vertices"], 12);
    assert_eq!(v["sweep"]["smallest_c"], 2);
    for name in ["cfi3_a.el", "cfi3_b.el"] {
        let text = fs::read_to_string(dir.path().join(name)).unwrap();
        assert!(text.starts_with("12 "), "{name}");
        assert!(text.lines().any(|l| l.starts_with("colors")), "{name}");
    }
    let sidecar: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("cfi3.json")).unwrap()).unwrap();
    assert_eq!(sidecar["graphs"][0]["labels"].as_array().unwrap().len(), 12);

    let iso = json(&setwl(
        dir.path(),
        &["oracle", "iso", "--a", "cfi3_a.el", "--b", "cfi3_b.el"],
    ));
    assert_eq!(iso["isomorphic"], false);
}

#[test]
fn bench_ratios() {
    let dir = workdir();
    let v = json(&setwl(
        dir.path(),
        &["bench", "--n", "30", "--k", "5", "--counts-only"],
    ));
    assert_eq!(v["node_ratio_rounded"], 139.0);
    assert_eq!(v["edge_ratio_rounded"], 2182.0);
}

#[test]
fn oracle_and_canon() {
    let dir = workdir();
    let count = json(&setwl(
        dir.path(),
        &[
            "oracle",
            "count",
            "--input",
            "2c3.el",
            "--pattern",
            "triangle",
        ],
    ));
    assert_eq!(count["count"], 2);
    assert_eq!(count["pattern"], "triangle");
    let sets = json(&setwl(
        dir.path(),
        &["oracle", "sets", "--input", "p3.el", "--k", "2", "--c", "1"],
    ));
    assert_eq!(
        sets["sets"],
        serde_json::json!([[0], [1], [2], [0, 1], [1, 2]])
    );

    fs::write(dir.path().join("p3b.el"), "3 2\n2 0\n0 1\n").unwrap();
    let a = json(&setwl(dir.path(), &["canon", "--input", "p3.el"]));
    let b = json(&setwl(dir.path(), &["canon", "--input", "p3b.el"]));
    assert_eq!(a["certificate"], b["certificate"]);
}

#[test]
fn graph6_is_inferred_from_extension() {
    let dir = workdir();
    // "Bw" is the triangle.
    fs::write(dir.path().join("k3.g6"), "Bw\n").unwrap();
    let v = json(&setwl(
        dir.path(),
        &[
            "build", "--input", "k3.g6", "--k", "2", "--c", "1", "--stats",
        ],
    ));
    assert_eq!(v["n"], 3);
    assert_eq!(v["set_counts"], serde_json::json!([3, 3]));
}

#[test]
fn exit_codes() {
    let dir = workdir();
    assert_eq!(setwl(dir.path(), &["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        setwl(dir.path(), &["build", "--input", "p3.el"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        setwl(
            dir.path(),
            &[
                "refine",
                "--input",
                "p3.el",
                "--k",
                "2",
                "--c",
                "1",
                "--schedule",
                "x"
            ]
        )
        .status
        .code(),
        Some(2)
    );

    let missing = setwl(
        dir.path(),
        &["build", "--input", "nope.el", "--k", "2", "--c", "1"],
    );
    assert_eq!(missing.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&missing.stderr).unwrap();
    assert!(err["error"].as_str().unwrap().contains("nope.el"));

    fs::write(dir.path().join("loop.el"), "2 1\n0 0\n").unwrap();
    let bad = setwl(
        dir.path(),
        &["build", "--input", "loop.el", "--k", "1", "--c", "1"],
    );
    assert_eq!(bad.status.code(), Some(1));
    let guard = setwl(
        dir.path(),
        &["bench", "--n", "10", "--k", "2", "--p", "1.5"],
    );
    assert_eq!(guard.status.code(), Some(1));
}

#[test]
fn deterministic_mode_is_byte_identical() {
    let dir = workdir();
    let runs: Vec<&[&str]> = vec![
        &[
            "--deterministic",
            "bench",
            "--n",
            "14",
            "--k",
            "3",
            "--p",
            "0.3",
            "--seed",
            "7",
        ],
        &[
            "--deterministic",
            "refine",
            "--input",
            "c6.el",
            "--k",
            "3",
            "--c",
            "2",
        ],
        &[
            "--deterministic",
            "distinguish",
            "--a",
            "c6.el",
            "--b",
            "2c3.el",
            "--k",
            "2",
            "--c",
            "2",
        ],
    ];
    for args in runs {
        let first = setwl(dir.path(), args);
        let second = setwl(dir.path(), args);
        assert!(first.status.success());
        assert_eq!(first.stdout, second.stdout, "{args:?}");
    }
    let timed = json(&setwl(
        dir.path(),
        &["--deterministic", "bench", "--n", "8", "--k", "2"],
    ));
    assert!(timed["run"].get("build_ms").is_none());
}

#[test]
fn thread_count_does_not_change_results() {
    let dir = workdir();
    let args = ["refine", "--input", "c6.el", "--k", "3", "--c", "3"];
    let one = setwl(dir.path(), &[&["--threads", "1"][..], &args].concat());
    let four = setwl(dir.path(), &[&["--threads", "4"][..], &args].concat());
    assert_eq!(json(&one), json(&four));
}
