use std::io::Write;
use std::process::{Command, Output};

use p1hall::{HallElement, HallTensor, K0Class, ModuleClass};

fn p1hall(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_p1hall"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = p1hall(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

#[test]
fn evaluation_examples() {
    assert_eq!(stdout(&["product", "[T0(1)]", "[O(0)]"]), "[O(1)] + [O(0)+T0(1)]");
    assert_eq!(stdout(&["k0", "O(2)+T0(3)"]), "(1, 5, {})");
    assert_eq!(stdout(&["hom", "O(2)", "O(0)"]), "0");
    assert_eq!(stdout(&["hom", "O(0)", "O(2)"]), "3");
    assert_eq!(stdout(&["hom", "C(3)", "C(3)"]), "3");
    assert_eq!(stdout(&["bracket", "[T0(2)]", "[O(1)]"]), "[O(3)]");
    assert_eq!(stdout(&["bracket", "[O(1)]", "[O(4)]"]), "0");
    assert_eq!(stdout(&["extensions", "T0(1)", "T0(1)"]), "1*[T0(2)]\n2*[T0(1)+T0(1)]");
    assert_eq!(stdout(&["extensions", "0", "0"]), "1*[0]");
}

#[test]
fn outputs_reparse() {
    let p: HallElement = stdout(&["product", "3/2*[O(1)] - [C(2)]", "[T0(1)] + [0]"]).parse().unwrap();
    let x: HallElement = "3/2*[O(1)] - [C(2)]".parse().unwrap();
    let y: HallElement = "[T0(1)] + [0]".parse().unwrap();
    assert_eq!(p, x.star(&y));
    let t: HallTensor = stdout(&["coproduct", "[O(0)+T0(1)]"]).parse().unwrap();
    assert_eq!(t.terms().count(), 4);
    let k: K0Class = stdout(&["k0", "C(4)+C(4)+O(-1)"]).parse().unwrap();
    assert_eq!(k.to_string(), "(1, -1, {4: 2})");
    for line in stdout(&["extensions", "T0(1)+Tinf(2)", "O(-1)"]).lines() {
        line.parse::<HallElement>().unwrap();
    }
}

#[test]
fn json_lines() {
    assert_eq!(
        stdout(&["--json", "k0", "O(2)+T0(3)"]),
        r#"{"sheaf":"O(2)+T0(3)","k0":[1,5,{}]}"#
    );
    assert_eq!(
        stdout(&["product", "[T0(1)]", "[T0(1)]", "--json"]),
        r#"{"T0(2)":"1","T0(1)+T0(1)":"2"}"#
    );
    let lines = stdout(&["--json", "extensions", "T0(1)", "O(0)"]);
    let rows: Vec<serde_json::Value> = lines.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["sheaf"], "O(1)");
    assert_eq!(rows[1]["count"], 1);
}

#[test]
fn classify_file() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "# a ladder and a loop\na -> b\nb -> c\nc -> *\nz -> z").unwrap();
    let path = file.path().to_str().unwrap();
    let class: ModuleClass = stdout(&["classify", path]).parse().unwrap();
    assert_eq!(class.to_string(), "T(3)+C(1)");

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "a -> c\nb -> c\nc -> *").unwrap();
    let out = p1hall(&["classify", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("`a`") && err.contains("`b`") && err.contains("`c`"), "{err}");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["product", "[O(1"][..],
        &["k0", "C(0)"],
        &["hom", "O(1)+O(2)", "O(3)"],
        &["frobnicate"],
        &["verify", "--mode", "sideways"],
        &["classify", "/nonexistent/module.txt"],
    ] {
        let out = p1hall(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
    let out = p1hall(&["product", "[O(1)] + [C(0)]", "[0]"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("position"));
}

#[test]
fn verify_small() {
    let text = stdout(&["verify", "--max-index", "2"]);
    assert!(text.contains("rho (corrected): ok"), "{text}");
    assert!(text.lines().all(|l| !l.contains("FAILED")), "{text}");
}

#[test]
fn verify_literal_mode_fails() {
    let out = p1hall(&["verify", "--max-index", "2", "--mode", "paper-literal"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("rho(H1(1) + H2(1)) = 0"), "{text}");
}

#[test]
fn verify_json_pairs() {
    let text = stdout(&["--json", "verify", "--max-index", "1"]);
    let pair = text
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap())
        .find(|v| v["pair"] == serde_json::json!(["H1(1)", "E(-1)"]))
        .expect("pair line");
    assert_eq!(pair["lhs"], "[O(0)]");
    assert_eq!(pair["rhs"], "[O(0)]");
    assert_eq!(pair["ok"], true);
}

#[test]
fn oracle_check_small() {
    let text = stdout(&["oracle-check", "--bound", "5"]);
    assert!(text.contains("submodule oracle: ok"), "{text}");
}
