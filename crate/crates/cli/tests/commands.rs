use std::path::PathBuf;
use std::process::{Command, Output};

fn surgeon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_surgeon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = surgeon(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "tests", "fixtures", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

#[test]
fn eval_chain() {
    assert_eq!(stdout(&["eval-chain", "5/2,4"]), "L(18,7)");
    // [2,3] = 5/3 and [4,5,6] = 110/29
    assert_eq!(stdout(&["eval-chain", "[2,3,inf,4,5,6]"]), "L(5,2)#L(110,81)");
    assert_eq!(stdout(&["eval-chain", "4,5,6"]), "L(110,81)");
    let json = stdout(&["--format", "json", "eval-chain", "-2,-2,-2"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["h1_order"], "4");
    assert_eq!(v["oracle_order"], "4");
}

#[test]
fn lens_homeo() {
    assert_eq!(stdout(&["lens-homeo", "7", "2", "7", "4"]), "true");
    assert_eq!(stdout(&["lens-homeo", "7", "2", "7", "-2", "--oriented"]), "false");
    assert_eq!(stdout(&["lens-homeo", "7", "2", "7", "-2"]), "true");
    assert_eq!(stdout(&["lens-homeo", "5", "1", "5", "2"]), "false");
}

#[test]
fn family_values() {
    let y = stdout(&[
        "family", "y", "--m", "-1", "--r", "-1", "--s", "-3", "--b", "1", "--k", "-2",
    ]);
    assert_eq!(y, "L(7,1)");
    let ys = stdout(&[
        "family", "ystar", "--m", "-2", "--r", "0", "--s", "-3", "--b", "-2", "--k", "-1",
    ]);
    assert_eq!(ys, "L(29,8)");
    let none = stdout(&[
        "family", "y", "--m", "-1/2", "--r", "1", "--s", "1", "--b", "1", "--k", "1",
    ]);
    assert_eq!(none, "none");
    let err = surgeon(&[
        "family", "ystar", "--m", "-1/2", "--r", "1", "--s", "1", "--b", "1", "--k", "1",
    ]);
    assert_eq!(err.status.code(), Some(2));
}

#[test]
fn fillings() {
    // N(-3,-2,t/u) = L(5t+7u, 2t+3u) at t/u = 1/2
    assert_eq!(stdout(&["magic", "-3", "-2", "1/2"]), "L(19,8)");
    assert_eq!(stdout(&["magic", "1/2", "-2", "-3"]), "L(19,8)");
    assert_eq!(stdout(&["whitehead", "-1", "-5"]), "L(5,1)");
    assert_eq!(stdout(&["whitehead", "inf", "-7/2"]), "L(7,2)");
    assert_eq!(stdout(&["magic", "5", "5", "5"]), "none");
}

#[test]
fn cable_and_realizability() {
    assert_eq!(stdout(&["cable", "-1", "-2", "-2"]), "3/2 TorusKnotExterior(3,1)");
    assert_eq!(stdout(&["realizable", "111", "68", "--family", "24"]), "none");
    assert_eq!(stdout(&["realizable", "111", "68", "--family", "33"]), "none");
    assert_eq!(stdout(&["realizable", "5", "3", "--family", "33"]), "1 -1");
}

#[test]
fn cusp_commands() {
    let square = fixture("square-two-cusp.json");
    assert_eq!(
        stdout(&["slopes", "--cusp", &square, "--index", "0", "--max-length", "1"]),
        "0/1\n1/0"
    );
    assert_eq!(
        stdout(&["symmetry", "--data", &square, "--multislope", "(1/2, 1/2)"]),
        "false"
    );
    assert_eq!(
        stdout(&["symmetry", "--data", &square, "--multislope", "(1/2, 1/3)"]),
        "true"
    );
    assert_eq!(
        stdout(&["certify", "--data", &square, "--multislope", "(8, *)"]),
        "true"
    );
    assert_eq!(
        stdout(&["certify", "--data", &square, "--multislope", "(7, *)"]),
        "false"
    );
    let bad = surgeon(&[
        "certify",
        "--data",
        &fixture("invalid-determinant.json"),
        "--multislope",
        "(1)",
    ]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("determinant 2"));
}

#[test]
fn verify_reports() {
    let out = surgeon(&["verify", "dhl"]);
    // the documented census discrepancy is allowlisted
    assert_eq!(out.status.code(), Some(0));
    let csv = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<_> = csv.lines().collect();
    assert_eq!(lines[0], "table,row,params,expected,computed,status,oriented,note");
    assert_eq!(lines.len(), 27);
    assert!(csv.contains("dhl-o9_41063-parameters-duplicate-t11824"));

    let a = surgeon(&[
        "--format", "json", "verify", "table", "--id", "table2", "--range", "-2..2",
    ]);
    let b = surgeon(&[
        "--format", "json", "verify", "table", "--id", "table2", "--range", "-2..2",
    ]);
    assert_eq!(a.stdout, b.stdout, "reports are deterministic");
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["summary"]["unexplained"], 0);
    let known = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|r| r["checks"].as_array().unwrap().iter())
        .filter(|c| c["known"] == "table2-row1-Y-suspected-typo")
        .count();
    assert!(known > 0);

    let unknown = surgeon(&["verify", "table", "--id", "table99"]);
    assert_eq!(unknown.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("table99"));
}
