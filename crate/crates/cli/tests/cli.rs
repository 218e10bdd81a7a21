use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn sutured(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sutured"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = sutured(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn h_of_f23() {
    assert_eq!(stdout(&["compute", &data("f23.txt"), "h"]), "6\n");
}

#[test]
fn superdim_of_the_identity() {
    assert_eq!(stdout(&["compute", &data("identity.txt"), "superdim"]), "1 - t^-1\n");
}

#[test]
fn half_delta_of_f12() {
    assert_eq!(stdout(&["compute", &data("f12.txt"), "delta", "--preset", "half"]), "-2\n");
}

#[test]
fn explicit_parameters_override_the_preset() {
    let out = stdout(&["compute", &data("f12.txt"), "delta", "--shift", "1/2,1/2,0,-1/2"]);
    assert_eq!(out, "-2\n");
    assert_eq!(stdout(&["compute", &data("f12.txt"), "pi", "--parity", "1,0,0,0"]), "0\n");
}

#[test]
fn actions_list_both_sides() {
    let out = stdout(&["compute", &data("identity.txt"), "actions"]);
    assert!(out.contains("E_out (outgoing)"));
    assert!(out.contains("E_in (incoming)"));
}

#[test]
fn glue_reports_the_case() {
    let out = stdout(&["glue", &data("rectangle.txt"), "x", "y", "--matrix"]);
    assert!(out.starts_with("case 2-1b\n"));
    assert!(out.contains("degree shift 0"));
    assert!(out.contains("[ 1  0]"));
}

#[test]
fn compose_pants_with_two_rectangles() {
    let out = stdout(&["compose", &data("pants2.txt"), &data("identity2.txt")]);
    assert!(out.contains("rank 4 = 4"));
    assert!(out.contains("cases: 1-3, 1-3"));
}

#[test]
fn composite_output_parses_again() {
    let out = stdout(&["compose", &data("pants2.txt"), &data("identity2.txt")]);
    let text = out.split("composite:\n").nth(1).unwrap();
    let path = std::env::temp_dir().join(format!("sutured-composite-{}.txt", std::process::id()));
    std::fs::write(&path, text).unwrap();
    let h = stdout(&["compute", path.to_str().unwrap(), "h"]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(h, "2\n");
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "theorem", "--seed", "5", "--trials", "5", "--max-h", "5"];
    assert_eq!(stdout(&args), stdout(&args));
    assert!(stdout(&["verify", "lemma-cases"]).contains("0 failures"));
}

#[test]
fn reference_hides_generic_formulas_by_default() {
    let out = stdout(&["reference", "1", "2"]);
    assert!(out.contains("-t + 3 - 3*t^-1 + t^-2"));
    assert!(!out.contains("generic"));
    assert!(stdout(&["reference", "1", "2", "--generic"]).contains("warning"));
}

#[test]
fn exit_codes() {
    assert_eq!(sutured(&["compute", &data("bad.txt"), "h"]).status.code(), Some(2));
    assert_eq!(sutured(&["compute", &data("pants2.txt"), "pi", "--preset", "half"]).status.code(), Some(2));
    assert_eq!(sutured(&["compose", &data("pants2.txt"), &data("identity.txt")]).status.code(), Some(2));
    assert_eq!(sutured(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(sutured(&["glue", &data("rectangle.txt"), "x", "zz"]).status.code(), Some(2));
}
