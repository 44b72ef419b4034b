use std::process::{Command, Output};

use serde_json::Value;

fn glint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_glint"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--emit", "json"];
    all.extend_from_slice(args);
    let o = glint(&all);
    serde_json::from_str(&stdout(&o)).expect("valid json")
}

#[test]
fn orbit_dim_reports_contribution() {
    let v = json(&[
        "orbit-dim",
        "--group",
        "ge6",
        "--m",
        "3",
        "--orbit",
        "E6(a1)",
    ]);
    assert_eq!(v["command"], "orbit-dim");
    assert_eq!(v["result"]["contribution"], 5);
    let v = json(&["orbit-dim", "--group", "gl", "--orbit", "4,2"]);
    assert_eq!(v["result"]["half_dim"], 13);
}

#[test]
fn induce_adds_rows() {
    let o = glint(&["induce", "--group", "gl", "--tau1", "2,1", "--tau2", "2,1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("(4,2)"));
}

#[test]
fn inducing_matches_closed_form() {
    let v = json(&["inducing", "--group", "gsp", "--p", "3", "--target", "8,6"]);
    assert_eq!(v["result"]["matches_closed_form"], true);
    assert!(!v["result"]["data"].as_array().unwrap().is_empty());
}

#[test]
fn tables_m2_match_and_are_deterministic() {
    let a = glint(&["tables", "--m", "2", "--params", "1..4"]);
    let b = glint(&["tables", "--m", "2", "--params", "1..=4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("Result: all tables matched"));
}

#[test]
fn disabling_lemma1_fails_the_m3_tables() {
    let o = glint(&["tables", "--m", "3", "--params", "1..3", "--disable-lemma1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn classify_filters_by_group() {
    let v = json(&["classify", "--m", "2", "--params", "1..2", "--group", "ge7"]);
    let rows = v["result"]["rows"].as_array().unwrap();
    assert!(!rows.is_empty());
    for r in rows {
        for s in r["slots"].as_array().unwrap() {
            assert_eq!(s["config"]["family"], "ge7");
        }
    }
}

#[test]
fn label_marks_m2_rows() {
    let o = glint(&["label", "--m", "2", "--params", "1..2"]);
    assert!(o.status.success());
    assert!(stdout(&o)
        .lines()
        .filter(|l| l.starts_with("- "))
        .all(|l| l.contains("NonzeroUnipotent")));
}

#[test]
fn weyl_check_counts_cosets() {
    let v = json(&["weyl", "--p", "3", "--r", "4", "--check"]);
    assert_eq!(v["result"]["admissible"].as_array().unwrap().len(), 3);
    assert_eq!(v["ok"], true);
}

#[test]
fn verify_roots_passes() {
    let o = glint(&["verify-roots"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("glint "));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(
        glint(&["weyl", "--p", "2", "--r", "4"]).status.code(),
        Some(2)
    );
    assert_eq!(
        glint(&["orbit-dim", "--group", "gx", "--orbit", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        glint(&["tables", "--m", "2", "--params", "3..1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn out_writes_file_and_io_errors_exit_3() {
    let dir = std::env::temp_dir().join(format!("glint-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("roots.md");
    let o = glint(&["verify-roots", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(std::fs::read_to_string(&path)
        .unwrap()
        .contains("PASS roots"));
    let bad = dir.join("missing").join("x.md");
    assert_eq!(
        glint(&["verify-roots", "--out", bad.to_str().unwrap()])
            .status
            .code(),
        Some(3)
    );
    std::fs::remove_dir_all(&dir).unwrap();
}
