use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn hkcone(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hkcone")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn model_file(json: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(json.as_bytes()).unwrap();
    f
}

const H2_DEG10: &str = r#"{"type":"hilb","n":2,"surface_gram":[[10]],"labels":["f"],"g":[1],"ambient_unimodular":true}"#;
const K2_THETA: &str = r#"{"type":"kummer","n":2,"surface_gram":[[2]],"labels":["Theta"],"g":[1],"ambient_unimodular":true}"#;

#[test]
fn pair_prints_fraction() {
    let m = model_file(H2_DEG10);
    let path = m.path().to_str().unwrap();
    let out = hkcone(&["pair", "--model", path, "--x", "f-5d", "--y", "f-5d"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "-5/2\n");
    let out = hkcone(&["pair", "--model", path, "--divisor", "--x", "f-d", "--y", "d"]);
    assert_eq!(stdout(&out), "2\n");
}

#[test]
fn mukai_commands() {
    let out = hkcone(&["mukai", "dim", "--surface", "[[4]]", "--v", "1,1,2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "2\n");
    let out = hkcone(&["mukai", "pair", "--surface", "[[10]]", "--v", "2,1,3", "--w", "2,1,3"]);
    assert_eq!(stdout(&out), "-2\n");
    let out = hkcone(&["mukai", "vector", "--surface", "[[16]]", "--rank", "2", "--c1", "1", "--c2", "6"]);
    assert!(stdout(&out).contains("chi = 6"), "{}", stdout(&out));
    let out = hkcone(&["mukai", "period", "--surface", "[[12]]", "--v", "2,1,3"]);
    assert!(stdout(&out).contains("gram: [[12]]"), "{}", stdout(&out));
    let out = hkcone(&["mukai", "period", "--surface", "[[10]]", "--v", "2,1,3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_exits_zero_and_reports_json() {
    let out = hkcone(&["verify", "all"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("0 failed, PASS"));
    let out = hkcone(&["--format", "json", "verify", "tables"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert!(v["fixtures"].as_array().unwrap().iter().any(|f| f["c_status"] == "tentative"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(hkcone(&[]).status.code(), Some(2));
    assert_eq!(hkcone(&["pair"]).status.code(), Some(2));
    assert_eq!(hkcone(&["verify", "everything"]).status.code(), Some(2));
    let m = model_file(H2_DEG10);
    let path = m.path().to_str().unwrap();
    let out = hkcone(&["classify", "--model", path, "--class", "f-5x"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown label"));
    let odd = model_file(r#"{"type":"hilb","n":2,"surface_gram":[[3]],"labels":["f"],"g":[1]}"#);
    let out = hkcone(&["model", "--model", odd.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(hkcone(&["model", "--model", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(hkcone(&["--help"]).status.code(), Some(0));
}

#[test]
fn enumeration_is_deterministic() {
    let m = model_file(H2_DEG10);
    let path = m.path().to_str().unwrap();
    let a = hkcone(&["enumerate", "--model", path, "--max-degree", "20"]);
    let b = hkcone(&["enumerate", "--model", path, "--max-degree", "20"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.lines().next().unwrap().starts_with("R=f-5delta_v (R,R)=-5/2"), "{text}");
    let none = hkcone(&["enumerate", "--model", path, "--max-degree", "9"]);
    assert_eq!(stdout(&none), "(none)\n");
}

#[test]
fn conjectural_verdicts_carry_status() {
    let m = model_file(K2_THETA);
    let path = m.path().to_str().unwrap();
    let out = hkcone(&["--format", "json", "classify", "--model", path, "--class", "Theta-4d"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["square"], "-2/3");
    assert_eq!(v["rho"], "3Theta-2e");
    assert_eq!(v["c_status"], "conjectural");
    let out = hkcone(&["cone-member", "--model", path, "--class", "2Theta-8d"]);
    assert!(stdout(&out).starts_with("inside: 2*(Theta-4e_v)"), "{}", stdout(&out));
    assert!(stdout(&out).contains("[conjectural]"));
    let out = hkcone(&["ample", "--model", path, "--h", "Theta"]);
    assert!(stdout(&out).contains("[conjectural]"));
    let out = hkcone(&["--format", "json", "cone-member", "--model", path, "--class", "-d"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "outside_up_to");
}

#[test]
fn divisor_position() {
    let m = model_file(H2_DEG10);
    let path = m.path().to_str().unwrap();
    let out = hkcone(&["position", "--model", path, "--class", "2f-5d"]);
    assert_eq!(stdout(&out), "outside outer cone\n");
    let out = hkcone(&["position", "--model", path, "--class", "f"]);
    assert_eq!(stdout(&out), "inner cone (D big)\n");
}
