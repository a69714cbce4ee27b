use std::process::{Command, Output};

fn qmat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmat")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn nf_prints_canonical_form() {
    let o = qmat(&["nf", "Y[2,2]*Y[1,1]", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "Y[1,1]*Y[2,2] - (q - q^-1)*Y[1,2]*Y[2,1]");
}

#[test]
fn nf_specialized() {
    let o = qmat(&["nf", "Y[2,2]*Y[1,1]", "--n", "2", "--q", "2"]);
    assert_eq!(stdout(&o).trim(), "Y[1,1]*Y[2,2] - 3/2*Y[1,2]*Y[2,1]");
    let o = qmat(&["nf", "q", "--q", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn syntax_error_exit_code() {
    let o = qmat(&["nf", "Y[1,"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 5"));
    assert_eq!(qmat(&["nf"]).status.code(), Some(2));
    assert_eq!(qmat(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn shape_validation() {
    assert_eq!(qmat(&["det", "--n", "3", "--m", "2"]).status.code(), Some(2));
    assert_eq!(qmat(&["nf", "Y[3,1]", "--n", "2"]).status.code(), Some(2));
    assert_eq!(qmat(&["nf", "det(2)", "--n", "3"]).status.code(), Some(2));
    let o = qmat(&["nf", "Y[2,3]*Y[1,1]", "--m", "2", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn minor_and_det() {
    let o = qmat(&["minor", "1,2", "2,3", "--json"]);
    assert_eq!(json(&o)["element"], "Y[1,2]*Y[2,3] - q*Y[1,3]*Y[2,2]");
    let o = qmat(&["minor", "2,1", "1,2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = qmat(&["det", "--n", "2"]);
    assert_eq!(stdout(&o).trim(), "Y[1,1]*Y[2,2] - q*Y[1,2]*Y[2,1]");
}

#[test]
fn verify_suite() {
    for n in ["2", "3"] {
        let o = qmat(&["verify", "--n", n, "--json"]);
        assert_eq!(o.status.code(), Some(0));
        let v = json(&o);
        assert_eq!(v["passed"], true);
        assert!(v["results"].as_array().unwrap().iter().all(|r| r["status"] == "pass"));
    }
}

#[test]
fn verify_reports_failures() {
    let dir = std::env::temp_dir().join(format!("qmat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.toml");
    std::fs::write(
        &path,
        "[[identity]]\nname = \"wrong\"\nn = 2\nlhs = \"Y[1,2]*Y[1,1]\"\nrhs = \"Y[1,1]*Y[1,2]\"\nanchor = \"deliberately false\"\n",
    )
    .unwrap();
    let o = qmat(&["verify", "--n", "2", "--manifest", path.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["results"][0]["status"], "fail");
    assert_eq!(v["results"][0]["residual"], "-(1 - q^-1)*Y[1,1]*Y[1,2]");
    std::fs::write(&path, "not toml [").unwrap();
    assert_eq!(qmat(&["verify", "--manifest", path.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn replay_passes() {
    let o = qmat(&["replay"]);
    assert_eq!(o.status.code(), Some(0));
    let o = qmat(&["replay", "--q", "2", "--json"]);
    assert_eq!(json(&o)["passed"], true);
}

#[test]
fn center_json() {
    let o = qmat(&["center", "--n", "3", "--maxdeg", "3", "--q", "2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["dimension"], 2);
    let det = stdout(&qmat(&["det", "--n", "3"]));
    assert_eq!(v["basis"][0], "1");
    assert_eq!(v["basis"][1], det.trim());
    assert!(v["residuals"].as_array().unwrap().iter().flat_map(|r| r.as_array().unwrap()).all(|r| r == "0"));
    assert_eq!(qmat(&["center", "--n", "2", "--maxdeg", "2", "--q", "-1"]).status.code(), Some(2));
}

#[test]
fn center_is_stable() {
    let a = qmat(&["center", "--n", "2", "--maxdeg", "2", "--json"]);
    let b = qmat(&["center", "--n", "2", "--maxdeg", "2", "--json", "--exact"]);
    let (a, b) = (json(&a), json(&b));
    assert_eq!(a["basis"], b["basis"]);
    assert_eq!(stdout(&qmat(&["center", "--n", "2", "--json"])), stdout(&qmat(&["center", "--n", "2", "--json"])));
}

#[test]
fn derivations_json() {
    let o = qmat(&["derivations", "--n", "2", "--shift", "1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["dimension"], 4);
    assert_eq!(v["inner_comparison"]["relation"], "equal");
    assert_eq!(v["nonzero_relation_residuals"], 0);
    assert!(v["b_ideal_failures"].as_array().unwrap().is_empty());
}

#[test]
fn normal_check() {
    let o = qmat(&["normal-check", "b(1) + b(4)", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["q_central"], true);
    assert_eq!(v["verified"], true);
    let o = qmat(&["normal-check", "Y[1,1]", "--n", "2", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["q_central"], false);
    let o = qmat(&["normal-check", "det(3)*det(3)"]);
    assert!(stdout(&o).contains("central"));
}

#[test]
fn twist_command() {
    let o = qmat(&["twist", "Y[1,3]", "Y[1,1]"]);
    assert_eq!(stdout(&o).trim(), "Y[1,1]: q^-1");
    let o = qmat(&["twist", "Y[1,1]", "Y[2,2]", "--n", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let o = qmat(&["twist", "det(3)", "--json"]);
    let v = json(&o);
    assert_eq!(v["twists"].as_array().unwrap().len(), 9);
    assert!(v["twists"].as_array().unwrap().iter().all(|t| t["exponent"] == 0));
    assert_eq!(qmat(&["twist", "Y[1,3]", "q"]).status.code(), Some(2));
}
