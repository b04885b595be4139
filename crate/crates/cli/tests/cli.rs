use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn problem(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("problems")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_panachee"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_exit_codes() {
    let ok = run(&["check", path(&problem("split.dsl"))]);
    assert_eq!(code(&ok), 0);
    assert_eq!(json(&ok)["obstruction"]["is_zero"], true);
    let bad = run(&["check", path(&problem("obstructed.dsl"))]);
    assert_eq!(code(&bad), 10);
    let report = json(&bad);
    assert_eq!(
        report["obstruction"]["group_invariants"],
        serde_json::json!([2])
    );
    assert_eq!(
        report["obstruction"]["coords"],
        report["obstruction"]["crosscheck_coords"]
    );
}

#[test]
fn complete_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    for (name, status) in [
        ("split.dsl", 0),
        ("nonsplit.dsl", 0),
        ("integers.dsl", 0),
        ("mixed_z9.dsl", 10),
    ] {
        let cert = dir.path().join(format!("{name}.json"));
        let out = run(&["complete", path(&problem(name)), "-o", path(&cert)]);
        assert_eq!(code(&out), status, "{name}");
        let report = json(&out);
        if status == 10 {
            assert!(report.get("completion").is_none());
            assert!(!cert.exists());
            continue;
        }
        let m = &report["completion"]["matrices"];
        for key in ["e", "h", "f", "g", "iP", "pY"] {
            assert!(m[key].is_array(), "{name}: {key}");
        }
        assert_eq!(code(&run(&["verify", path(&cert)])), 0, "{name}");
    }
}

#[test]
fn tampered_certificate_fails() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("c.json");
    assert_eq!(
        code(&run(&[
            "complete",
            path(&problem("nonsplit.dsl")),
            "-o",
            path(&cert)
        ])),
        0
    );
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    let entry = &mut v["morphisms"]["e"]["matrix"][0][0];
    *entry = Value::from((entry.as_i64().unwrap() + 1) % 4);
    std::fs::write(&cert, v.to_string()).unwrap();
    let out = run(&["verify", path(&cert)]);
    assert_eq!(code(&out), 11);
    assert!(String::from_utf8_lossy(&out.stderr).contains("failed"));
}

#[test]
fn parse_errors_carry_locations() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.dsl");
    std::fs::write(&file, "ring 4;\nmodule A = sum(2);\nmodule A = sum(2);\n").unwrap();
    let out = run(&["check", path(&file)]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains(":3:8:") && err.contains("already defined"),
        "{err}"
    );

    std::fs::write(
        &file,
        "ring 4;\nmodule A = sum(2);\nmor f : A -> A = [[1, 1]];\n",
    )
    .unwrap();
    let out = run(&["check", path(&file)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("expected 1x1"));

    let garbage = dir.path().join("bad.json");
    std::fs::write(&garbage, "{ not json").unwrap();
    assert_eq!(code(&run(&["verify", path(&garbage)])), 2);
}

#[test]
fn ill_formed_problems() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.dsl");
    let text = std::fs::read_to_string(problem("split.dsl"))
        .unwrap()
        .replace("[[0, 1]]", "[[0, 0]]");
    std::fs::write(&file, text).unwrap();
    assert_eq!(code(&run(&["check", path(&file)])), 3);
}

#[test]
fn torsor_and_enumerate() {
    let out = run(&["torsor", path(&problem("split.dsl"))]);
    assert_eq!(code(&out), 0);
    let t = &json(&out)["torsor"];
    assert_eq!(t["size"], 2);
    assert_eq!(t["unique"], false);
    let out = run(&["enumerate", path(&problem("split.dsl")), "--limit", "5"]);
    assert_eq!(code(&out), 0);
    let sols = json(&out)["solutions"].as_array().unwrap().len();
    assert_eq!(sols, 2);
    let out = run(&["enumerate", path(&problem("split.dsl")), "--limit", "0"]);
    assert_eq!(json(&out)["solutions"].as_array().unwrap().len(), 0);
    assert_eq!(
        code(&run(&["enumerate", path(&problem("obstructed.dsl"))])),
        10
    );
}

#[test]
fn oracle_agrees_with_check() {
    let out = run(&["oracle", path(&problem("split.dsl")), "--max-order", "16"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["oracle"]["exists"], true);
    assert_eq!(json(&out)["oracle"]["solution_classes"], 2);
    let out = run(&[
        "oracle",
        path(&problem("obstructed.dsl")),
        "--max-order",
        "16",
    ]);
    assert_eq!(code(&out), 10);
    assert_eq!(json(&out)["oracle"]["exists"], false);
    assert_eq!(
        code(&run(&[
            "oracle",
            path(&problem("split.dsl")),
            "--max-order",
            "8"
        ])),
        4
    );
    assert_eq!(
        code(&run(&[
            "oracle",
            path(&problem("split.dsl")),
            "--max-order",
            "65"
        ])),
        2
    );
    assert_eq!(code(&run(&["oracle", path(&problem("integers.dsl"))])), 4);
}

#[test]
fn missing_file_is_an_io_error() {
    assert_eq!(code(&run(&["check", "/nonexistent/problem.dsl"])), 1);
}
