use std::io::Write;
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mstr-lcs"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = run(&full);
    let text = String::from_utf8(out.stdout).unwrap();
    let value: Value = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (out.status.code().unwrap(), value)
}

#[test]
fn solve_fixture_with_traceback() {
    let (code, v) = json(&[
        "solve",
        "--x",
        "aaba",
        "--y",
        "aaba",
        "-p",
        "aab",
        "-p",
        "aba",
        "-p",
        "ba",
        "--traceback",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["feasible"], true);
    assert_eq!(v["length"], 4);
    assert_eq!(v["lcs"], "aaba");
    assert_eq!(v["removed_constraints"], serde_json::json!(["ba"]));
    assert_eq!(v["d"], 2);
    assert_eq!(v["r"], 6);
    for key in ["t", "live_states", "cell_updates", "elapsed_ms"] {
        assert!(v[key].is_number(), "{key} missing");
    }
}

#[test]
fn solve_infeasible_exits_3() {
    let (code, v) = json(&["solve", "--x", "ab", "--y", "ba", "-p", "ab"]);
    assert_eq!(code, 3);
    assert_eq!(v["feasible"], false);
    assert!(v["length"].is_null());
    assert!(v.get("lcs").is_none());
}

#[test]
fn empty_inputs_have_length_zero() {
    let out = run(&["solve", "--x", "", "--y", ""]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("length: 0"), "{text}");
}

#[test]
fn json_round_trips() {
    let out = run(&[
        "solve",
        "--x",
        "abcbdab",
        "--y",
        "bdcaba",
        "--traceback",
        "--format",
        "json",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, again);
    assert_eq!(v["length"], 4);
}

#[test]
fn oracle_examples() {
    let (code, v) = json(&[
        "oracle", "--x", "aaba", "--y", "aaba", "-p", "aab", "-p", "aba", "-p", "ba",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["source"], "oracle");
    assert_eq!(v["length"], 4);
    let (_, v) = json(&["oracle", "--x", "abab", "--y", "baba", "-p", "ab"]);
    assert_eq!(v["length"], 3);
    let long = "a".repeat(30);
    let out = run(&["oracle", "--x", &long, "--y", "a"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("too large"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["solve", "--x", "a"]).status.code(), Some(2));
    assert_eq!(
        run(&["solve", "--x", "a", "--y", "a", "-p", ""])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["solve", "--x-file", "/nonexistent/x", "--y", "a"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["solve", "--x", "a", "--x-file", "f", "--y", "a"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["bench", "--sizes", "0"]).status.code(), Some(2));
    assert_eq!(run(&["bench", "--sizes", ""]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let too_many: Vec<String> = (0..5).map(|i| format!("p{i}")).collect();
    let mut args = vec!["solve", "--x", "a", "--y", "a", "--d-limit", "4"];
    for p in &too_many {
        args.extend(["-p", p]);
    }
    assert_eq!(run(&args).status.code(), Some(2));
    assert_eq!(
        run(&[
            "solve",
            "--x",
            "abab",
            "--y",
            "abab",
            "--traceback",
            "--memory-cap",
            "8"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn files_as_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let x = dir.path().join("x.txt");
    let y = dir.path().join("y.txt");
    let p = dir.path().join("p.txt");
    std::fs::write(&x, "aaba\n").unwrap();
    std::fs::write(&y, "aaba").unwrap();
    std::fs::write(&p, "aab\naba\nba\n").unwrap();
    let (code, v) = json(&[
        "solve",
        "--x-file",
        x.to_str().unwrap(),
        "--y-file",
        y.to_str().unwrap(),
        "--patterns-file",
        p.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["length"], 4);

    let bad = dir.path().join("bad.txt");
    let mut f = std::fs::File::create(&bad).unwrap();
    f.write_all(b"ab\n\nba\n").unwrap();
    let out = run(&[
        "solve",
        "--x",
        "ab",
        "--y",
        "ab",
        "--patterns-file",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn preprocess_reports_removals() {
    let (code, v) = json(&["preprocess", "-p", "aab", "-p", "aba", "-p", "ba"]);
    assert_eq!(code, 0);
    assert_eq!(v["patterns"], serde_json::json!(["aab", "aba"]));
    assert_eq!(v["removed"][0]["pattern"], "ba");
    assert_eq!(v["removed"][0]["witness"], "aba");

    let out = run(&["preprocess", "-p", "ab", "-p", "ab"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "ab\n");
    let out = run(&["preprocess", "-p", "x"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "x\n");
    assert_eq!(run(&["preprocess", "-p", ""]).status.code(), Some(2));
}

#[test]
fn preprocess_writes_dot() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("tree.dot");
    let out = run(&[
        "preprocess",
        "-p",
        "aab",
        "-p",
        "aba",
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph"));
    assert!(text.contains("style=dashed"));
}

#[test]
fn bench_record_counts() {
    let (code, v) = json(&["bench", "--sizes", "8,16", "--repeats", "3"]);
    assert_eq!(code, 0);
    let records = v["records"].as_array().unwrap();
    assert_eq!(records.len(), 6);
    assert_eq!(records.iter().filter(|r| r["size"] == 8).count(), 3);
    assert!(records.iter().all(|r| r["d"] == 2 && r["r"] == 6));
    assert_eq!(v["summary"]["step_ratios"].as_array().unwrap().len(), 1);

    let out = run(&["bench", "--sizes", "8,16", "--repeats", "1", "--csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[0].starts_with("size,repeat"));
}

#[test]
fn bench_is_deterministic_apart_from_timing() {
    let strip = |mut v: Value| {
        for r in v["records"].as_array_mut().unwrap() {
            r["elapsed_ms"] = Value::Null;
        }
        v["records"].clone()
    };
    let (_, a) = json(&["bench", "--sizes", "8,16", "--repeats", "2", "--seed", "7"]);
    let (_, b) = json(&["bench", "--sizes", "8,16", "--repeats", "2", "--seed", "7"]);
    assert_eq!(strip(a), strip(b));
}

#[test]
fn solve_and_oracle_agree() {
    let mut rng = seeded(0x5017e);
    for _ in 0..40 {
        let k = rng.gen_range(1..=3u8);
        let mut word = |max: usize, min: usize| -> String {
            let len = rng.gen_range(min..=max);
            (0..len)
                .map(|_| (b'a' + rng.gen_range(0..k)) as char)
                .collect()
        };
        let x = word(8, 0);
        let y = word(8, 0);
        let p1 = word(3, 1);
        let p2 = word(2, 1);
        for preprocess in [true, false] {
            let mut args = vec!["--x", &x, "--y", &y, "-p", &p1, "-p", &p2];
            if !preprocess {
                args.push("--no-preprocess");
            }
            let mut solve_args = vec!["solve"];
            solve_args.extend(&args);
            let mut oracle_args = vec!["oracle"];
            oracle_args.extend(&args);
            let (c1, a) = json(&solve_args);
            let (c2, b) = json(&oracle_args);
            assert_eq!(c1, c2, "{args:?}");
            assert_eq!(a["feasible"], b["feasible"], "{args:?}");
            assert_eq!(a["length"], b["length"], "{args:?}");
        }
    }
}

fn seeded(seed: u64) -> rand::rngs::StdRng {
    rand::rngs::StdRng::seed_from_u64(seed)
}
