use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_nqsym"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn nqsym");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn ok_json(args: &[&str], stdin: &str) -> Value {
    let out = run(args, stdin);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn term(comp: &[usize], num: i64) -> Value {
    json!({"comp": comp, "num": num, "den": 1})
}

#[test]
fn expand_four_term_expansion() {
    let v = ok_json(&["expand", "--comp", "1,2,2"], "");
    assert_eq!(
        v["L"],
        json!({"basis": "L", "terms": [term(&[1, 1, 3], 1), term(&[1, 1, 2, 1], 1), term(&[1, 3, 1], 1), term(&[1, 4], 1)]})
    );
    assert_eq!(v["M"]["basis"], "M");
    let only_m = ok_json(&["expand", "--comp", "122", "--basis", "M"], "");
    assert!(only_m.get("L").is_none());
    assert_eq!(only_m["M"], v["M"]);
}

#[test]
fn expand_pretty() {
    let out = run(&["expand", "--comp", "122", "--basis", "L", "--pretty"], "");
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "N122 = L113 + L1121 + L131 + L14\n");
}

#[test]
fn output_is_deterministic() {
    let a = run(&["expand", "--comp", "2,1,3"], "");
    let b = run(&["expand", "--comp", "2,1,3"], "");
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn matroid_f_uniform() {
    let m = r#"{"n":4,"bases":[[1,2],[1,3],[1,4],[2,3],[2,4],[3,4]]}"#;
    let v = ok_json(&["matroid-f"], m);
    assert_eq!(v["F"], json!({"basis": "N", "terms": [term(&[2, 2], 6)]}));
    assert_eq!(v["num_bases"], 6);
    assert_eq!(v["in_rank_space"], true);
    assert_eq!(v["loops_and_coloops"], 0);
}

#[test]
fn matroid_f_with_loop_and_other_basis() {
    let m = r#"{"n":3,"bases":[[1],[2]]}"#;
    let v = ok_json(&["matroid-f", "--basis", "M"], m);
    assert_eq!(v["F"]["basis"], "M");
    assert_eq!(v["loops"], json!([3]));
    assert_eq!(v["rank_space"], json!([3, 2]));
    assert_eq!(v["in_rank_space"], true);
}

#[test]
fn convert_and_mul() {
    let n1 = json!({"basis": "N", "terms": [term(&[1], 1)]});
    let v = ok_json(&["mul"], &json!([n1, n1]).to_string());
    assert_eq!(v, json!({"basis": "N", "terms": [term(&[2], 1)]}));
    let v = ok_json(&["mul", "--basis", "M"], &json!([n1, n1]).to_string());
    assert_eq!(v, json!({"basis": "M", "terms": [term(&[2], 1), term(&[1, 1], 2)]}));
    let back = ok_json(&["convert", "--basis", "N"], &v.to_string());
    assert_eq!(back, json!({"basis": "N", "terms": [term(&[2], 1)]}));
}

#[test]
fn recover_round_trip() {
    let m = r#"{"n":6,"bases":[[1,4],[1,5],[1,6],[2,4],[2,5],[2,6],[3,4],[3,5],[3,6],[1,6],[2,6],[3,6],[4,6],[5,6]]}"#;
    let f = ok_json(&["matroid-f"], m);
    let v = ok_json(&["recover"], &f["F"].to_string());
    assert_eq!(v, json!({"case": "loopless", "lambda": [3, 2, 1], "loops": 0}));
}

#[test]
fn rank2_split_certificate() {
    let v = ok_json(&["rank2-split", "--lambda", "2,2,1", "--s", "1"], "");
    assert_eq!(v["alpha"], json!([2, 2, 1]));
    assert_eq!(v["beta"], json!([2, 3]));
    assert_eq!(v["mu"], json!([2, 3]));
    assert_eq!(v["certificate"]["S"], json!([1, 2]));
    assert_eq!(v["certificate"]["parent"]["lambda"], json!([2, 2, 1]));
}

#[test]
fn geom_decompose_output() {
    let req = json!({"lambda": [2, 2, 1, 1], "J": [[2, 2, 2], [4, 1, 1]]});
    let v = ok_json(&["geom-decompose"], &req.to_string());
    let reps = v["representatives"].as_array().unwrap();
    assert_eq!(reps.len(), 2);
    assert_eq!(reps[0]["lambda"], json!([2, 2, 2]));
    assert_eq!(reps[1]["lambda"], json!([4, 1, 1]));
    assert_eq!(v["splits"].as_array().unwrap().len(), 1);
}

#[test]
fn input_file_flag() {
    let dir = std::env::temp_dir().join(format!("nqsym-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("m.json");
    std::fs::write(&path, r#"{"n":2,"bases":[[1],[2]]}"#).unwrap();
    let v = ok_json(&["matroid-f", "--input", path.to_str().unwrap()], "");
    assert_eq!(v["F"], json!({"basis": "N", "terms": [term(&[1, 1], 2)]}));
    std::fs::remove_dir_all(&dir).unwrap();
}

fn error_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).unwrap()
}

#[test]
fn errors_are_machine_readable() {
    let out = run(&["matroid-f"], r#"{"n":4,"bases":[[1,2],[3,4]]}"#);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_of(&out)["kind"], "invalid_matroid");

    let out = run(&["geom-decompose"], r#"{"lambda":[2,2,1,1],"J":[[2,2,2],[3,2,1]]}"#);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_of(&out)["kind"], "mod_m2_mismatch");

    let out = run(&["mul"], "not json");
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_of(&out)["kind"], "invalid_input");

    let out = run(&["expand", "--comp", "1,0"], "");
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_of(&out)["kind"], "usage");
}

#[test]
fn resource_limits_exit_2() {
    let out = run(&["expand", "--comp", "15,15"], "");
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_of(&out)["kind"], "resource_limit");
    let out = run(&["verify", "--max-n", "50"], "");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_small_report() {
    let v = ok_json(&["verify", "--max-n", "4", "--samples", "10"], "");
    assert_eq!(v["max_n"], 4);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.len() >= 18);
    for c in checks {
        assert!(c["id"].is_string() && c["anchor"].is_string() && c["passed"].is_boolean());
    }
    let failing: Vec<&str> = checks
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert_eq!(failing, ["transition-bw-unitriangular", "ascent-runs-refine"]);
    let again = run(&["verify", "--max-n", "4", "--samples", "10"], "");
    assert_eq!(serde_json::from_slice::<Value>(&again.stdout).unwrap(), v);
}
