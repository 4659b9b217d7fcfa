use std::path::PathBuf;

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("mpfiber").chain(args.iter().copied());
    let code = mpfiber::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn fiber_on_f1() {
    let f1 = data("f1.ocf");
    let (code, out, err) = run(&["fiber", &f1, "--base", "1,0", "--dir", "1,1", "--dim", "0"]);
    assert_eq!(code, 0, "{err}");
    let v = json(&out);
    let pts: Vec<(String, String, u64)> = v["points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| {
            (
                p["birthT"].as_str().unwrap().to_string(),
                p["deathT"].as_str().unwrap().to_string(),
                p["multiplicity"].as_u64().unwrap(),
            )
        })
        .collect();
    assert_eq!(pts, [("0".into(), "1".into(), 1), ("0".into(), "inf".into(), 1)]);
    assert_eq!(v["points"][0]["deathPoint"], serde_json::json!(["2", "1"]));
}

#[test]
fn fiber_oracle_agrees_and_output_is_deterministic() {
    let f4 = data("f4.ocf");
    let args = ["fiber", &f4, "--base", "-1/2,0", "--dir", "2,1", "--oracle"];
    let (code, first, _) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(json(&first)["oracle"], "agree");
    let (_, second, _) = run(&args);
    assert_eq!(first, second);
}

#[test]
fn critical_on_f1_with_trivial_field() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.dgvf");
    std::fs::write(&empty, "# no pairs\n").unwrap();
    let (code, out, _) = run(&["critical", &data("f1.ocf"), "--dgvf", empty.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["C"].as_array().unwrap().len(), 3);
    assert_eq!(v["C"], v["Cbar"]);
}

#[test]
fn critical_on_f2_marks_closure_value() {
    let (code, out, _) = run(&["critical", &data("f2.ocf"), "--format", "text"]);
    assert_eq!(code, 0);
    assert_eq!(out, "(3,2) critical\n(3,5) critical\n(6,2) critical\n(6,5) closure\n");
}

#[test]
fn rank_on_f1() {
    let (code, out, _) = run(&["rank", &data("f1.ocf"), "--u", "1/2,1/2", "--v", "2,2", "--dim", "0"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["rank"], 1);
    assert_eq!(v["barU"], serde_json::json!(["0", "0"]));
    assert_eq!(v["barV"], serde_json::json!(["1", "1"]));
    let (_, text, _) = run(&["rank", &data("f1.ocf"), "--u", "-1,-1", "--v", "2,2", "--dim", "0", "--format", "text"]);
    assert_eq!(text, "0\n");
}

#[test]
fn usage_errors_exit_2() {
    let f1 = data("f1.ocf");
    let (code, _, err) = run(&["fiber", &f1, "--base", "1,0", "--dir", "1,0"]);
    assert_eq!(code, 2);
    assert!(err.contains("direction must be strictly positive"), "{err}");
    let (code, _, err) = run(&["rank", &f1, "--u", "0.5,0", "--v", "1,1", "--dim", "0"]);
    assert_eq!(code, 2, "{err}");
    let (code, _, _) = run(&["rank", &f1, "--u", "2,2", "--v", "1,1", "--dim", "0"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["fiber"]);
    assert_eq!(code, 2);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("serve"));
}

#[test]
fn validate_reports_bad_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.ocf");
    std::fs::write(&bad, "ocf 2\n0 ; 0 0\n0 1 ; 1 1\n").unwrap();
    let (code, _, err) = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("face-closure"), "{err}");

    let (code, out, _) = run(&["validate", &data("f4.ocf"), "--dgvf", &data("f4.dgvf")]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["valid"], true);

    let cyclic = dir.path().join("cyclic.dgvf");
    std::fs::write(&cyclic, "0 ; 0 1\n1 ; 1 2\n2 ; 0 2\n").unwrap();
    let (code, out, _) = run(&["validate", &data("f4.ocf"), "--dgvf", cyclic.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(json(&out)["dgvf"]["acyclic"], false);

    let (code, _, _) = run(&["validate", "/nonexistent/file.ocf"]);
    assert_eq!(code, 1);
}

#[test]
fn dgvf_output_validates() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = run(&["dgvf", &data("f4.ocf")]);
    assert_eq!(code, 0);
    let path = dir.path().join("built.dgvf");
    std::fs::write(&path, &out).unwrap();
    let (code, _, _) = run(&["validate", &data("f4.ocf"), "--dgvf", path.to_str().unwrap()]);
    assert_eq!(code, 0);
}

#[test]
fn classify_distinguishes_f3_lines() {
    let f3 = data("f3.ocf");
    let id = |base: &str, dir: &str| {
        let (code, out, _) = run(&["classify", &f3, "--base", base, "--dir", dir, "--format", "text"]);
        assert_eq!(code, 0);
        out
    };
    let l = id("0,3", "7,4");
    assert_eq!(l, id("0,2", "1,1"));
    assert_ne!(l, id("0,6", "4,1"));
    assert_eq!(l.trim().len(), 16);
}

#[test]
fn closure_cap_from_environment() {
    // the only test touching the variable; F2's closure has 4 elements
    std::env::set_var(mpfiber::cli::CAP_ENV, "3");
    let (code, _, err) = run(&["critical", &data("f2.ocf")]);
    std::env::remove_var(mpfiber::cli::CAP_ENV);
    assert_eq!(code, 1);
    assert!(err.contains("cap of 3"), "{err}");
}
