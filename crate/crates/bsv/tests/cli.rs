use std::process::Command;

fn bsv(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_bsv")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn builtin_json() {
    let (code, out, err) = bsv(&["builtin", "s1s2", "--json"]);
    assert_eq!(code, 0, "{err}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["obstruction"]["quotient_order"], 3);
}

#[test]
fn verify_shipped_file() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios/s1s2.scn");
    let (code, out, err) = bsv(&["verify", path]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("obstruction"));
}

#[test]
fn failing_report_exits_one() {
    let (code, _, _) = bsv(&["builtin", "appendix", "--lemma", "A7"]);
    assert_eq!(code, 1);
}

#[test]
fn bad_input_exits_two() {
    let (code, _, err) = bsv(&["verify", "/nonexistent/file.scn"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
    let (code, _, _) = bsv(&["builtin", "pencil", "--t0", "0", "--t1", "0"]);
    assert_eq!(code, 2);
}

#[test]
fn schema_is_json() {
    let (code, out, _) = bsv(&["report", "--schema"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["properties"].is_object());
}
