use ncg::report::{Report, Status};
use std::process::{Command, Output};

fn ncg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncg")).args(args).output().expect("run ncg")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn check_m2_passes() {
    let o = ncg(&["check", "m2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains(", 0 not ok"));
}

#[test]
fn check_qsphere_records_the_strict_isometry_as_expected_failure() {
    let o = ncg(&["check", "qsphere", "--cutoff", "4", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rep: Report = serde_json::from_slice(&o.stdout).unwrap();
    let strict = rep.get("spectral-strict-isometry").unwrap();
    assert_eq!(strict.status, Status::XfailPass);
    assert!(strict.counterexample.is_some());
    assert_eq!(rep.parameters["delta"], "q");
    assert_eq!(rep.parameters["mu"], "q^-1");
}

#[test]
fn unrepresentable_parameter_is_a_usage_error() {
    let o = ncg(&["check", "qsphere", "--param", "beta=2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not representable"), "{}", stderr(&o));
}

#[test]
fn unknown_parameter_and_model_are_usage_errors() {
    assert_eq!(ncg(&["check", "qsphere", "--param", "gamma=1"]).status.code(), Some(2));
    assert_eq!(ncg(&["check", "qtorus"]).status.code(), Some(2));
    assert_eq!(ncg(&["check", "qsphere", "--param", "beta"]).status.code(), Some(2));
    assert_eq!(ncg(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn eval_prints_normal_forms() {
    for (model, expr, want) in [
        ("qsphere", "d*a", "1 + q b c"),
        ("qdisk", "z*zb", "1 - q^-2 w"),
        ("qdisk", "z*w", "q^-2 w z"),
        ("m2", "E12*E21", "E11"),
    ] {
        let o = ncg(&["eval", model, expr]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        assert_eq!(stdout(&o).trim(), want);
    }
}

#[test]
fn eval_specializes_q() {
    let o = ncg(&["eval", "qdisk", "z*zb", "--q", "rational", "--s0", "3/2"]);
    assert_eq!(stdout(&o).trim(), "1 - 16/81 w");
}

#[test]
fn eval_syntax_error_shows_a_caret() {
    let o = ncg(&["eval", "qdisk", "z*+"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("z*+\n  ^"), "{}", err);
}

#[test]
fn chern_m2_reports_the_connection() {
    let o = ncg(&["chern", "m2-omega10"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[nabla(s)] 2 E12 s⊗s + 2 E21 t⊗s"), "{}", stdout(&o));
}

#[test]
fn chern_bundles_pass() {
    for b in ["qsphere-splus", "qsphere-omega10", "qdisk-omega10", "qdisk-splus"] {
        let o = ncg(&["chern", b]);
        assert_eq!(o.status.code(), Some(0), "{}: {}", b, stdout(&o));
    }
}

#[test]
fn json_report_round_trips() {
    let o = ncg(&["chern", "qdisk-omega10", "--json"]);
    let rep: Report = serde_json::from_slice(&o.stdout).unwrap();
    let again: Report = serde_json::from_str(&serde_json::to_string(&rep).unwrap()).unwrap();
    assert_eq!(rep, again);
    assert!(rep.metadata.contains_key("Gamma+[0][0]"));
}

#[test]
fn output_flag_writes_a_file() {
    let path = std::env::temp_dir().join(format!("ncg-cli-test-{}.json", std::process::id()));
    let o = ncg(&["check", "m2", "--json", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    let rep: Report = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(rep.model, "m2");
    std::fs::remove_file(path).ok();
}

#[test]
fn confluence_on_builtin_and_file() {
    let o = ncg(&["confluence", "qsphere", "--max-len", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    // b a -> a b drops the q factor, so the overlap with d a does not join.
    let pres = "[generators]\na 1\nb -1\nc 1\nd -1\n[rules]\nb a -> a b\nd a -> 1 + q b c\na d -> 1 + q^-1 b c\nd b -> q b d\n";
    let path = std::env::temp_dir().join(format!("ncg-cli-bad-{}.pres", std::process::id()));
    std::fs::write(&path, pres).unwrap();
    let o = ncg(&["confluence", path.to_str().unwrap(), "--max-len", "4"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(1), "{}{}", stdout(&o), stderr(&o));
}

#[test]
fn list_names_every_model() {
    let out = stdout(&ncg(&["list"]));
    for name in ["m2", "qsphere", "qdisk", "qdisk-localized", "qsphere-omega10"] {
        assert!(out.contains(name));
    }
}
