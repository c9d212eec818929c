use std::io::Write;
use std::process::{Command, Stdio};

fn run_stdin(job: &str) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_parahoric"))
        .args(["--json", "--no-cache"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(job.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn valid_job_from_stdin() {
    let (code, out, _) = run_stdin(
        r#"{"schema_version": 1, "command": "weights", "parahoric": {"type": "A", "rank": 1}, "c": 2}"#,
    );
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["labels"], serde_json::json!(["0", "ω", "2ω"]));
    assert_eq!(v["schema_version"], 1);
}

#[test]
fn user_errors_exit_with_two() {
    let cases = [
        "not json",
        r#"{"command": "levels", "parahoric": {"type": "A", "rank": 1}}"#,
        r#"{"schema_version": 1, "command": "levels", "parahoric": {"type": "A", "rank": 1}, "x": 1}"#,
        r#"{"schema_version": 1, "command": "levels", "parahoric": {"type": "B", "rank": 1}}"#,
        r#"{"schema_version": 1, "command": "levels", "parahoric": {"type": "A", "rank": 1}}"#,
        r#"{"schema_version": 1, "command": "weights", "parahoric": {"type": "G", "rank": 2}, "c": 1, "facet": [2]}"#,
        r#"{"schema_version": 1, "command": "verlinde", "parahoric": {"type": "A", "rank": 1,
            "points": [{"label": "x", "facet": [1]}]}, "insertions": {"x": [0]}}"#,
        r#"{"schema_version": 1, "command": "fusion", "parahoric": {"type": "A", "rank": 2, "level": 1},
            "lambda": [2, 0], "mu": [0, 0]}"#,
        r#"{"schema_version": 1, "command": "descend", "parahoric": {"type": "A", "rank": 1,
            "points": [{"label": "x", "facet": [0, 1]}]}, "tuple": {"x": [1]}}"#,
        r#"{"schema_version": 1, "command": "bwb", "parahoric": {"type": "A", "rank": 2,
            "points": [{"label": "x", "facet": [0, 1]}]}, "weights": {"x": [0, 0]}, "boundary": {"x": [0, 1]}}"#,
    ];
    for job in cases {
        let (code, out, err) = run_stdin(job);
        assert_eq!(code, 2, "{job}: {err}");
        assert!(out.is_empty());
        assert!(err.starts_with("error: "), "{err}");
    }
}

#[test]
fn missing_input_file_is_a_user_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_parahoric"))
        .args(["--input", "/nonexistent/job.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn seed_check_passes() {
    let out = Command::new(env!("CARGO_BIN_EXE_parahoric"))
        .arg("--seed-check")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().count() >= 4);
    assert!(text.lines().all(|l| l.starts_with("PASS ")));
}
