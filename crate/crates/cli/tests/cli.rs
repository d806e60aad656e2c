use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn problem(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn calg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_calg"))
        .args(args)
        .output()
        .unwrap()
}

fn json_of(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

const MAXIMAL_SQUARE: &str = "ring Q[x,y];\nideal (x^2, x*y, y^2);\n";
const TWISTED_CUBIC: &str = "ring Q[x,y,z,w];\nideal (xz - y^2, xw - yz, yw - z^2);\n";

#[test]
fn classify_json_is_stamped_and_deterministic() {
    let f = problem(TWISTED_CUBIC);
    let p = f.path().to_str().unwrap();
    let a = calg(&["classify", p, "--format", "json"]);
    let b = calg(&["classify", p, "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let j = json_of(&a);
    assert!(j["engine"].as_str().unwrap().starts_with("calg "));
    assert_eq!(j["analyses"]["classify"]["perfect"], true);
    assert_eq!(
        j["analyses"]["classify"]["betti"],
        serde_json::json!([1, 3, 2])
    );
}

#[test]
fn resolve_keys_betti_numbers_by_position() {
    let f = problem(MAXIMAL_SQUARE);
    let j = json_of(&calg(&[
        "resolve",
        f.path().to_str().unwrap(),
        "--format",
        "json",
    ]));
    let over_r = &j["analyses"]["resolve"]["over_R"];
    assert_eq!(over_r["betti"]["1,2"], 3);
    assert_eq!(over_r["betti"]["2,3"], 2);
    assert_eq!(over_r["bound"], 4);
    assert_eq!(j["analyses"]["resolve"]["residue_field_over_S"]["bound"], 8);
    let text = calg(&["resolve", f.path().to_str().unwrap()]);
    let s = String::from_utf8(text.stdout).unwrap();
    assert!(s.contains("total:"), "{s}");
}

#[test]
fn tate_dump_lines() {
    let f = problem(MAXIMAL_SQUARE);
    let out = calg(&["tate", f.path().to_str().unwrap(), "--bound", "4"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("T[2][1] : hdeg=2, idet=3, diff="), "{s}");
}

#[test]
fn cotangent_report_shape() {
    let f = problem(MAXIMAL_SQUARE);
    let j = json_of(&calg(&[
        "cotangent",
        f.path().to_str().unwrap(),
        "--format",
        "json",
        "--bound",
        "6",
    ]));
    let t = &j["analyses"]["cotangent"]["T"];
    assert_eq!(t["3"]["zero"], true);
    assert_eq!(t["4"]["mu"], 1);
    assert!(t["1"]["hilbert"].is_array());
    assert!(j["analyses"]["cotangent"]["caveats"].is_array());
}

#[test]
fn parse_errors_exit_two() {
    let f = problem("ring Q[x,y];\nideal (x^2 + y);\n");
    let out = calg(&["classify", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`y`"));
    let f = problem("ring Q[x,y];\nideal (x^2, q);\n");
    let out = calg(&["classify", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(
        calg(&["classify", "/nonexistent/problem.calg"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn precondition_errors_exit_three() {
    let f = problem(MAXIMAL_SQUARE);
    let out = calg(&[
        "link",
        "--ideal",
        f.path().to_str().unwrap(),
        "--regseq",
        "x^2, x*y",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let f = problem("ring Q[x,y];\nideal (x, y^2);\n");
    let out = calg(&["cotangent", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn link_modes() {
    let f = problem(MAXIMAL_SQUARE);
    let p = f.path().to_str().unwrap();
    let j = json_of(&calg(&[
        "link", "--ideal", p, "--regseq", "x^2, y^3", "--format", "json",
    ]));
    let l = &j["analyses"]["link"];
    assert_eq!(l["J"].as_array().unwrap().len(), 3);
    assert_eq!(l["verification"]["grade_equal"], true);
    assert_eq!(l["verification"]["double_link_recovers"], true);
    let f = problem(TWISTED_CUBIC);
    let p = f.path().to_str().unwrap();
    let a = calg(&[
        "link", "--ideal", p, "--auto", "--seed", "5", "--format", "json",
    ]);
    let b = calg(&[
        "link", "--ideal", p, "--auto", "--seed", "5", "--format", "json",
    ]);
    assert_eq!(a.stdout, b.stdout);
    let j = json_of(&a);
    assert_eq!(j["analyses"]["link"]["verification"]["J_perfect"], true);
    assert_eq!(calg(&["link", "--ideal", p]).status.code(), Some(3));
}

#[test]
fn harness_is_consistent_on_corpus() {
    for text in [
        "ring Q[x];\nideal (x^2);\n",
        "ring Q[x,y];\nideal (x^2, y^3);\n",
        MAXIMAL_SQUARE,
        TWISTED_CUBIC,
    ] {
        let f = problem(text);
        let out = calg(&["harness", f.path().to_str().unwrap(), "--format", "json"]);
        let j = json_of(&out);
        let checks = j["analyses"]["harness"]["checks"].as_array().unwrap();
        assert_eq!(checks.len(), 3);
        assert!(checks
            .iter()
            .all(|c| c["status"] != "COUNTEREXAMPLE CANDIDATE"));
    }
}
