use std::process::Command;

use tighthilbert::cli::{run, ReportDocument, CACHE_DIR_ENV};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_tighthilbert"));
    c.env_remove(CACHE_DIR_ENV);
    c
}

fn invoke(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("tighthilbert").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (code, String::from_utf8(out).unwrap())
}

#[test]
fn verify_quartic_table() {
    let out = bin()
        .args(["verify", "--scenario", "5,4,4", "--nmax", "5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("scenario 5,4,4: PASS"));
    let lengths: Vec<&str> = text
        .lines()
        .filter(|l| l.contains("f-pure-colon"))
        .map(|l| l.split_whitespace().nth(1).unwrap())
        .collect();
    assert_eq!(lengths, ["3", "13", "34", "70", "125"]);
}

#[test]
fn closure_with_certificate() {
    let (code, text) = invoke(&["closure", "--scenario", "3,4,4", "--n", "1"]);
    assert_eq!(code, 0);
    assert!(text.contains("I + m^2"));
    assert!(text.contains("char-p-deg-p+1"));
    assert!(text.contains("[PASS] exclusion certificate n=1"));
}

#[test]
fn csv_table_rows() {
    let (code, text) = invoke(&["verify", "--scenario", "5,4,4", "--nmax", "3", "--format", "csv"]);
    assert_eq!(code, 0);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let pairs: Vec<(String, String)> = reader
        .records()
        .map(|r| {
            let r = r.unwrap();
            (r[1].to_string(), r[2].to_string())
        })
        .collect();
    assert_eq!(
        pairs,
        [("1", "3"), ("2", "13"), ("3", "34")].map(|(a, b)| (a.to_string(), b.to_string()))
    );
}

#[test]
fn exit_codes() {
    let empty = bin().args(["gb", "--char", "5", "--vars", "X,Y"]).output().unwrap();
    assert_eq!(empty.status.code(), Some(2));
    let parse = bin()
        .args(["gb", "--char", "5", "--vars", "X,Y", "2X"])
        .output()
        .unwrap();
    assert_eq!(parse.status.code(), Some(2));
    let not_prime = bin().args(["verify", "--scenario", "4,4,4"]).output().unwrap();
    assert_eq!(not_prime.status.code(), Some(2));
    let budget = bin()
        .args(["verify", "--scenario", "5,4,4", "--nmax", "2", "--budget-pairs", "1"])
        .output()
        .unwrap();
    assert_eq!(budget.status.code(), Some(3));
    let gb_budget = bin()
        .args([
            "gb",
            "--char",
            "7",
            "--vars",
            "X,Y",
            "--budget-pairs",
            "1",
            "X^2 - Y, X*Y - 1",
        ])
        .output()
        .unwrap();
    assert_eq!(gb_budget.status.code(), Some(3));
}

#[test]
fn failed_assertion_exits_one() {
    let (code, json) = invoke(&["filtration", "--r", "4", "--t", "1", "--d", "3", "--format", "json"]);
    assert_eq!(code, 0);
    let mut doc = ReportDocument::from_json(&json).unwrap();
    assert!(doc.reports[0].passed());
    doc.reports[0].assert("forced", false, "");
    assert_eq!(doc.exit_code(), 1);
}

#[test]
fn cache_serves_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["verify", "--scenario", "3,4,3", "--nmax", "4", "--format", "json"];
    let first = bin().args(args).env(CACHE_DIR_ENV, dir.path()).output().unwrap();
    assert_eq!(first.status.code(), Some(0));
    let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(entries.len(), 1);
    let second = bin().args(args).env(CACHE_DIR_ENV, dir.path()).output().unwrap();
    assert_eq!(first.stdout, second.stdout);
    let entry = entries[0].as_ref().unwrap().path();
    std::fs::write(&entry, "corrupt").unwrap();
    let third = bin().args(args).env(CACHE_DIR_ENV, dir.path()).output().unwrap();
    assert_eq!(third.status.code(), Some(0));
    assert!(String::from_utf8(third.stderr).unwrap().contains("corrupt cache entry"));
    let doc = ReportDocument::from_json(&String::from_utf8(third.stdout).unwrap()).unwrap();
    assert_eq!(doc.reports[0].rows.len(), 4);
}

#[test]
fn hilbert_of_polynomial_ideal() {
    let (code, text) = invoke(&["hilbert", "--char", "7", "--vars", "X,Y", "--nmax", "8", "X^2, Y^3"]);
    assert_eq!(code, 0);
    assert!(text.contains("length n=1  6"));
    assert!(
        text.lines()
            .any(|l| l.starts_with("fitted") && l.ends_with("[6, 0, 0]")),
        "{text}"
    );
}

#[test]
fn hilbert_of_scenario() {
    let (code, text) = invoke(&["hilbert", "--scenario", "3,4,3", "--format", "json"]);
    assert_eq!(code, 0);
    let doc = ReportDocument::from_json(&text).unwrap();
    assert_eq!(doc.reports[0].fitted, Some(vec![4, 3, 1]));
}

#[test]
fn exploratory_scenario_exits_zero() {
    let (code, text) = invoke(&["verify", "--scenario", "3,5,3", "--nmax", "2"]);
    assert_eq!(code, 0);
    assert!(text.contains("EXPLORATORY"));
}
