//! Byte-exact CLI outputs and exit codes. Set `UPDATE_GOLDEN=1` to rewrite
//! the stored outputs.

use std::path::PathBuf;
use std::process::Command;

fn dir(sub: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join(sub)
}

fn fixture(name: &str) -> String {
    dir("fixtures").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_dglie")).args(args).output().expect("run dglie");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8"))
}

fn golden(name: &str, args: &[&str], code: i32) -> String {
    let (got, out) = run(args);
    assert_eq!(got, code, "exit code of {args:?}; output {out}");
    let path = dir("golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &out).unwrap();
    } else {
        let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(out, expected, "golden {name} changed");
    }
    out
}

fn field(out: &str, key: &str) -> serde_json::Value {
    serde_json::from_str::<serde_json::Value>(out).expect("json")[key].clone()
}

#[test]
fn u1_of_d1_d2() {
    let out = golden("u1_d1_d2.json", &["u1", "d1/\\d2"], 0);
    // (c1, c2) -> 1/2 (d1 c1 d2 c2 - d2 c1 d1 c2)
    assert_eq!(field(&out, "result"), "1/2*D[1,0;0,1] - 1/2*D[0,1;1,0]");
    let (_, applied) = run(&["apply", "1/2*D[1,0;0,1] - 1/2*D[0,1;1,0]", "t1^2", "t2*t1"]);
    // 1/2 (2 t1 * t1 - 0) = t1^2
    assert_eq!(field(&applied, "result"), "t1^2");
}

#[test]
fn hochschild_of_second_derivative() {
    let out = golden("hochschild_d1_squared.json", &["hochschild", "D[2]"], 0);
    let d = field(&out, "result");
    let out = golden("apply_d_d1_squared.json", &["apply", d.as_str().unwrap(), "t1", "t1"], 0);
    assert_eq!(field(&out, "result"), "-2");
}

#[test]
fn schouten_and_wedge() {
    golden("schouten_t1d1d2_t2d1.json", &["schouten", "t1*d1/\\d2", "t2*d1"], 0);
    let out = golden("wedge_d2_d1.json", &["wedge", "d2", "d1"], 0);
    assert_eq!(field(&out, "result"), "-d1/\\d2");
}

#[test]
fn gerstenhaber_bracket() {
    golden("gerstenhaber.json", &["gerstenhaber", "D[1;1]", "t1*D[1]"], 0);
}

#[test]
fn so3_residue() {
    let out = golden(
        "so3_residue.json",
        &["kontsevich-check", "t1*d2/\\d3 + t2*d3/\\d1 + t3*d1/\\d2", "--trunc", "3"],
        1,
    );
    assert_eq!(field(&out, "residue_min_order"), 2);
}

#[test]
fn u1_only_plugin_fails_arity_two() {
    let out = golden("kontsevich_u1_only.json", &["kontsevich-check"], 1);
    let conditions = field(&out, "conditions");
    let i = conditions.as_array().unwrap().iter().find(|c| c["condition"] == "(i)").unwrap();
    assert_eq!(i["passed"], false);
    assert!(i["witness"].is_string());
}

#[test]
fn hkr_reports() {
    golden("hkr_n1.json", &["hkr-report", "--n", "1", "--trunc", "2", "--order", "2"], 0);
    golden("hkr_n2.json", &["hkr-report", "--n", "2", "--trunc", "2", "--order", "2"], 0);
}

#[test]
fn mc_instances() {
    golden("mc_check_end_v.json", &["mc-check", &fixture("end_v_mc.json")], 0);
    golden("exp_end_v.json", &["exp", &fixture("end_v_mc.json")], 0);
    golden("mc_push_inclusion.json", &["mc-push", &fixture("end_v_sub_inclusion.json")], 0);
    golden("twist_inclusion.json", &["twist", &fixture("end_v_sub_inclusion.json")], 0);
    golden("twist_check_inclusion.json", &["twist-check", &fixture("end_v_sub_inclusion.json")], 0);
    golden("linf_check_inclusion.json", &["linf-check", &fixture("end_v_sub_inclusion.json")], 0);
    golden("extend_inclusion.json", &["extend", &fixture("extend_inclusion.json")], 0);
}

#[test]
fn non_mc_twist() {
    let f = fixture("sl2_non_mc.json");
    let (code, _) = run(&["mc-check", &f]);
    assert_eq!(code, 1);
    // refused without the override
    let (code, _) = run(&["twist", &f]);
    assert_eq!(code, 1);
    let out = golden("twist_check_non_mc.json", &["twist-check", &f, "--allow-non-mc", "--order", "2"], 1);
    let checks = field(&out, "checks");
    let sq = checks.as_array().unwrap().iter().find(|c| c["check"] == "square_zero").unwrap();
    assert_eq!(sq["passed"], false);
    assert!(sq["witness"].is_string());
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["nonsense"]).0, 2);
    assert_eq!(run(&["schouten", "d1/\\", "d2"]).0, 2);
    assert_eq!(run(&["schouten", "--n", "1", "d2", "d1"]).0, 2);
    assert_eq!(run(&["apply", "D[1;1]", "t1"]).0, 2);
    assert_eq!(run(&["mc-check", "/nonexistent.json"]).0, 2);
    assert_eq!(run(&["mc-push", &fixture("sl2_non_mc.json")]).0, 2);
    assert_eq!(run(&["kontsevich-check", "t2*d1/\\d2 + d2/\\d3"]).0, 1);
}

#[test]
fn pretty_format() {
    let (code, out) = run(&["wedge", "d2", "d1", "--format", "pretty"]);
    assert_eq!(code, 0);
    assert!(out.contains("result: -d1/\\d2"));
}

#[test]
fn ln_inverts_exp() {
    let (_, out) = run(&["exp", &fixture("end_v_mc.json")]);
    let terms = field(&out, "exp")["terms"].clone();
    let inst = serde_json::json!({
        "coeffs": {"generators": [0], "truncation": 3},
        "algebra": {"named": "end_v"},
        "omega": terms,
    });
    let (code, out) = run(&["ln", &inst.to_string()]);
    assert_eq!(code, 0);
    assert_eq!(field(&out, "ln")["text"], "(hbar + 1/2*hbar^2)*E10");
}
