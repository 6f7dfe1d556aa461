use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_tomjerry");

fn tomjerry(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const JER24: [&str; 6] = ["--candidate", "g0-basket-2345", "--centre", "1/3", "--format", "Jer24"];

#[test]
fn single_failing_case() {
    let o = tomjerry(&JER24);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2, "{text}");
    assert!(lines[0].starts_with("candidate,centre,format,verdict"));
    assert!(lines[1].starts_with("g0-basket-2345,"));
    assert!(lines[1].contains(",fail,"), "{}", lines[1]);
}

#[test]
fn index_and_order_selectors_agree() {
    let by_order = tomjerry(&JER24);
    let by_index = tomjerry(&["--candidate", "g0-basket-2345", "--centre", "2", "--format", "Jer24"]);
    assert_eq!(stdout(&by_order), stdout(&by_index));
}

#[test]
fn same_seed_same_bytes() {
    let args = ["--candidate", "g0-basket-2345", "--centre", "1/5", "--seed", "7", "--jobs", "1"];
    let a = tomjerry(&args);
    let b = tomjerry(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).lines().count() > 2);
}

#[test]
fn json_output_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.json");
    let mut args = JER24.to_vec();
    args.extend(["--emit", "json", "--out", path.to_str().unwrap()]);
    let o = tomjerry(&args);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let rows: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["format"], "Jer24");
    assert_eq!(rows[0]["verdict"], "fail");
}

#[test]
fn lengths_off_leaves_column_empty() {
    let base = ["--candidate", "g0-basket-2345", "--centre", "1/5", "--format", "Tom4", "--emit", "json"];
    let row = |extra: &[&str]| {
        let o = tomjerry(&[&base[..], extra].concat());
        assert_eq!(o.status.code(), Some(0));
        let rows: Value = serde_json::from_slice(&o.stdout).unwrap();
        rows[0].clone()
    };
    let on = row(&[]);
    assert_eq!(on["verdict"], "pass");
    assert_eq!(on["chern_count"], 8);
    assert_eq!(on["length_count"], 8);
    let off = row(&["--verify-lengths", "off"]);
    assert_eq!(off["verdict"], "pass");
    assert_eq!(off["chern_count"], 8);
    assert!(off["length_count"].is_null());
}

#[test]
fn invalid_record_rejected_unless_partial() {
    let good = include_str!("../../core/fixtures/genus0.json").trim();
    let bad = r#"{"id": "broken", "genus": 0, "basket": [[3, 5]], "weights_X": [1, 1], "numerator_X": [[1, 0]]}"#;
    let body = format!("[{}, {bad}]", &good[1..good.len() - 1]);
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(body.as_bytes()).unwrap();
    let path = file.path().to_str().unwrap();

    let strict = tomjerry(&["--candidates", path, "--centre", "1/3", "--format", "Jer24"]);
    assert_eq!(strict.status.code(), Some(1));
    assert!(strict.stdout.is_empty());

    let partial = tomjerry(&["--candidates", path, "--centre", "1/3", "--format", "Jer24", "--partial"]);
    assert_eq!(partial.status.code(), Some(0), "{}", String::from_utf8_lossy(&partial.stderr));
    assert_eq!(stdout(&partial).lines().count(), 2);
    assert!(String::from_utf8_lossy(&partial.stderr).contains("broken"));
}

#[test]
fn unknown_candidate_is_an_error() {
    let o = tomjerry(&["--candidate", "nope"]);
    assert_eq!(o.status.code(), Some(1));
}
