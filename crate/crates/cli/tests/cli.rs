use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn cmc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cmc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_golden_data() {
    let o = cmc(&["cm", "verify", path(&data("cm_n2_c1.json"))]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = cmc(&["--format", "json", "cm", "verify", path(&data("cm_n2_c1.json"))]);
    assert_eq!(stdout_json(&o)["passed"], Value::Bool(true));
}

#[test]
fn build_matches_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cm.json");
    let o = cmc(&["cm", "build", path(&data("config_n2_c1.json")), "--output", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let built: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let golden: Value = serde_json::from_str(&std::fs::read_to_string(data("cm_n2_c1.json")).unwrap()).unwrap();
    assert_eq!(built, golden);
    assert_eq!(golden["Zbar"]["entries"], serde_json::json!(["0", "-5", "5", "0"]));
}

#[test]
fn transposed_convention_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cm.json");
    let o = cmc(&[
        "cm", "build", path(&data("config_n2_c1.json")),
        "--convention", "transposed", "--output", out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&cmc(&["cm", "verify", out.to_str().unwrap()])), 1);
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(data("cm_n2_c1.json")).unwrap();
    let trunc = dir.path().join("trunc.json");
    std::fs::write(&trunc, &text[..text.len() / 2]).unwrap();
    let o = cmc(&["cm", "verify", trunc.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(!o.stderr.is_empty());

    // a point moved off the curve
    let bad = text.replacen("\"5/4\"", "\"6/4\"", 1);
    let off = dir.path().join("off.json");
    std::fs::write(&off, bad).unwrap();
    assert_eq!(code(&cmc(&["cm", "verify", off.to_str().unwrap()])), 2);
}

#[test]
fn missing_file_exits_3() {
    assert_eq!(code(&cmc(&["cm", "verify", "/nonexistent/cm.json"])), 3);
}

#[test]
fn ideal_build_n1_generators() {
    let o = cmc(&["--format", "json", "ideal", "build", "--cm", path(&data("cm_n1_c1.json"))]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    let o = cmc(&["ideal", "build", "--cm", path(&data("cm_n1_c1.json"))]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("gen_x = -x + 3/4"), "{text}");
    assert!(text.contains("gen_y = 5/4 + (-1)*y"), "{text}");
    // gen_T = (y + 5/4)/(3/4 - x) - z, stored with the monic denominator x - 3/4
    let t = v["gen_T"].as_array().unwrap();
    assert_eq!(t.len(), 2);
    assert_eq!(t[1]["zpow"], 1);
    assert_eq!(t[1]["coeff"][0]["num"], serde_json::json!(["-1"]));
    assert_eq!(t[0]["coeff"][0]["num"], serde_json::json!(["-5/4"]));
    assert_eq!(t[0]["coeff"][1]["num"], serde_json::json!(["-1"]));
    assert_eq!(t[0]["coeff"][0]["den"], serde_json::json!(["-3/4", "1"]));
}

#[test]
fn random_build_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, seed: &str| {
        let out = dir.path().join(name);
        let o = cmc(&[
            "--seed", seed, "cm", "build", "--random", "3", "--curve", "hyperbola",
            "--output", out.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0);
        std::fs::read(out).unwrap()
    };
    let a = run("a.json", "11");
    let b = run("b.json", "11");
    let c = run("c.json", "12");
    assert_eq!(a, b);
    assert_ne!(a, c);
    let out = dir.path().join("a.json");
    assert_eq!(code(&cmc(&["cm", "verify", out.to_str().unwrap()])), 0);
}

#[test]
fn shift_by_dlog() {
    // dlog(x + y) = (y - x)(dx + dy) on the hyperbola
    let o = cmc(&[
        "--format", "json", "cm", "shift", path(&data("cm_n2_c1.json")), "--omega", "y-x,y-x",
    ]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["Zbar"]["entries"], serde_json::json!(["-2", "-5", "5", "-2"]));
}

#[test]
fn primary_decomposition_verdicts() {
    let o = cmc(&["pd", "analyze", path(&data("pd_local.json"))]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("divisor: 1*(3/4, 5/4) + 2*(4/3, 5/3)"));
    assert_eq!(code(&cmc(&["pd", "analyze", path(&data("pd_cross.json"))])), 1);
}

#[test]
fn curve_check_verdicts() {
    assert_eq!(code(&cmc(&["curve", "check", "--curve", "elliptic"])), 0);
    assert_eq!(code(&cmc(&["curve", "check", "--curve", "y^2 - x^2"])), 1);
}

#[test]
fn ideal_inspect_dual_basis() {
    let o = cmc(&["--format", "json", "ideal", "inspect", path(&data("ideal_I.json"))]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["dual_basis"]["v"].as_array().unwrap().len(), 2);
}

#[test]
fn skew_product() {
    let o = cmc(&["dmod", "mul", path(&data("op_z.json")), path(&data("op_xy.json"))]);
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "4*x^2 + 2 + ((x)*y)*z");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&cmc(&["cm", "verify"])), 2);
    assert_eq!(code(&cmc(&["suite", "run", "--only", "42"])), 2);
    assert_eq!(code(&cmc(&["cm", "build", "--random", "2"])), 2);
}
