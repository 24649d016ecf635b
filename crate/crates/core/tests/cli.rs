use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_psl-ekr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn out_arg(dir: &Path) -> String {
    dir.to_str().unwrap().to_string()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn read_csv(path: &Path) -> Vec<Vec<String>> {
    let mut rd = csv::ReaderBuilder::new()
        .has_headers(false)
        .from_path(path)
        .unwrap();
    rd.records()
        .map(|r| r.unwrap().iter().map(String::from).collect())
        .collect()
}

#[test]
fn verify_all_passes_for_small_q() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "verify",
        "--q",
        "5,7",
        "--suite",
        "all",
        "--out",
        &out_arg(dir.path()),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    for suite in ["table", "sums", "rank", "ekr"] {
        for q in [5, 7] {
            let v = read_json(&dir.path().join(format!("{suite}_q{q}.json")));
            assert_eq!(v["schema"], "1");
            assert_eq!(v["pass"], true, "{suite} q={q}");
            assert_eq!(v["q"], q);
        }
    }
}

#[test]
fn rank_report_at_eleven() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "verify",
        "--q",
        "11",
        "--suite",
        "rank",
        "--out",
        &out_arg(dir.path()),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = read_json(&dir.path().join("rank_q11.json"));
    assert_eq!(v["details"]["rank"], 110);
    assert_eq!(v["details"]["expected_rank"], 110);
    assert_eq!(v["details"]["dimension_ledger"]["total"], 110);
}

#[test]
fn invalid_configurations_exit_two_and_write_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("reports");
    let o = out_arg(&out_dir);
    for args in [
        vec!["verify", "--q", "4", "--out", &o],
        vec!["verify", "--q", "5,6", "--out", &o],
        vec!["verify", "--q", "3", "--suite", "rank", "--out", &o],
        vec!["verify", "--q", "11", "--suite", "ekr", "--out", &o],
        vec!["verify", "--q", "9", "--suite", "ekr", "--out", &o],
        vec!["verify", "--q", "5", "--approx-digits", "0", "--out", &o],
        vec!["dump", "foo", "--q", "5", "--out", &o],
        vec!["dump", "table", "--q", "8", "--out", &o],
        vec!["frobnicate"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
    assert!(!out_dir.exists());
}

#[test]
fn exhausted_budget_is_a_failure() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "verify",
        "--q",
        "5",
        "--suite",
        "table",
        "--budget-seconds",
        "0",
        "--out",
        &out_arg(dir.path()),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = read_json(&dir.path().join("table_q5.json"));
    assert_eq!(v["pass"], false);
    assert!(v["failure"].as_str().unwrap().contains("budget"));
}

#[test]
fn all_skips_unsupported_suites() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["verify", "--q", "3", "--out", &out_arg(dir.path())]);
    assert_eq!(out.status.code(), Some(0));
    let rank = read_json(&dir.path().join("rank_q3.json"));
    assert_eq!(rank["skipped"], true);
    let ekr = read_json(&dir.path().join("ekr_q3.json"));
    assert_eq!(ekr["skipped"], false);
    assert_eq!(ekr["details"]["max_size"], 3);
}

#[test]
fn reruns_are_byte_identical() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for d in [&a, &b] {
        let out = run(&[
            "verify",
            "--q",
            "5,9",
            "--seed",
            "7",
            "--out",
            &out_arg(d.path()),
        ]);
        assert_eq!(out.status.code(), Some(0));
        let out = run(&["dump", "matrixN", "--q", "7", "--out", &out_arg(d.path())]);
        assert_eq!(out.status.code(), Some(0));
    }
    let mut names: Vec<_> = fs::read_dir(a.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    names.sort();
    assert_eq!(names.len(), 9);
    for name in names {
        assert_eq!(
            fs::read(a.path().join(&name)).unwrap(),
            fs::read(b.path().join(&name)).unwrap(),
            "{name:?}"
        );
    }
}

#[test]
fn dump_shapes() {
    let dir = tempfile::tempdir().unwrap();
    let o = out_arg(dir.path());
    for (what, q) in [
        ("table", "5"),
        ("matrixN", "5"),
        ("matrixM", "5"),
        ("legendre", "7"),
    ] {
        assert_eq!(
            run(&["dump", what, "--q", q, "--out", &o]).status.code(),
            Some(0),
            "{what}"
        );
    }
    let table = read_csv(&dir.path().join("table_q5.csv"));
    assert_eq!(table.len(), 1 + 7);

    let n = read_csv(&dir.path().join("matrixN_q5.csv"));
    assert_eq!(n.len(), 1 + 30);
    let body: Vec<&[String]> = n[1..].iter().map(|r| &r[r.len() - 30..]).collect();
    for (i, row) in body.iter().enumerate() {
        assert_eq!(row[i], "4");
    }

    let m = read_csv(&dir.path().join("matrixM_q5.csv"));
    assert_eq!(m.len(), 1 + 20);
    assert!(m[1..]
        .iter()
        .all(|r| r.iter().filter(|x| *x == "1").count() == 6));

    let leg = read_csv(&dir.path().join("legendre_q7.csv"));
    assert_eq!(leg.len(), 1 + 7);
}
