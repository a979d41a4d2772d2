use std::path::Path;
use std::process::Command;

use parahiggs_cli::config::CONFIG_SCHEMA;
use parahiggs_cli::corpus::render;
use parahiggs_cli::{
    emit_examples, examples, load_config, parse_config, run_report, ConfigError, Report,
};
use serde_json::Value;

fn example(name: &str) -> parahiggs_cli::RawConfig {
    examples()
        .into_iter()
        .find(|(n, _)| n == name)
        .map(|(_, c)| c)
        .expect("bundled example")
}

fn invalid_messages(text: &str) -> Vec<String> {
    match parse_config(text) {
        Err(ConfigError::Invalid(msgs)) => msgs,
        other => panic!("expected validation failure, got {other:?}"),
    }
}

fn sp2(points: &str, tasks: &str) -> String {
    format!(
        r#"{{
  "schema": "{CONFIG_SCHEMA}",
  "name": "t",
  "points": {points},
  "splitting": [0, 0],
  "flags": "generic",
  "weights": {weights},
  "pairing": {{ "symmetry": "antisymmetric", "target_degree": 0, "omega": "standard" }},
  "tasks": {tasks},
  "seed": 3
}}"#,
        weights = {
            let n = points.matches(',').count() + 1;
            serde_json::to_string(&vec![vec!["1/4", "3/4"]; n]).unwrap()
        }
    )
}

#[test]
fn bundled_sp2_r5_loads() {
    let dir = tempfile::tempdir().unwrap();
    emit_examples(dir.path());
    let job = load_config(&dir.path().join("sp2_r5.json")).unwrap();
    assert_eq!(job.bundle.rank(), 2);
    assert_eq!(job.bundle.curve().len(), 5);
    assert!(job.generic_flags);
}

#[test]
fn duplicate_points_rejected() {
    let msgs = invalid_messages(&sp2(r#"["0", "1", "2/2"]"#, r#"["sections"]"#));
    assert!(msgs.iter().any(|m| m.starts_with("points:")), "{msgs:?}");
}

#[test]
fn odd_standard_antisymmetric_rejected() {
    let text = sp2(r#"["0", "1", "2"]"#, r#"["sections"]"#).replace("[0, 0]", "[0, 0, 0]");
    let msgs = invalid_messages(&text);
    assert!(msgs.iter().any(|m| m.contains("odd rank 3")), "{msgs:?}");
}

#[test]
fn empty_and_unknown_tasks_rejected() {
    let msgs = invalid_messages(&sp2(r#"["0", "1", "2"]"#, "[]"));
    assert!(msgs.iter().any(|m| m.contains("at least one task")));
    let msgs = invalid_messages(&sp2(r#"["0", "1", "2"]"#, r#"["fly"]"#));
    assert!(msgs.iter().any(|m| m.contains("unknown task")));
}

#[test]
fn parse_errors_carry_position() {
    match parse_config("{\n  \"schema\": \"x\",\n  oops\n}") {
        Err(ConfigError::Parse { line, .. }) => assert_eq!(line, 3),
        other => panic!("{other:?}"),
    }
    // missing field names the field
    match parse_config("{}") {
        Err(ConfigError::Parse { message, .. }) => assert!(message.contains("schema")),
        other => panic!("{other:?}"),
    }
}

#[test]
fn bad_flag_is_reported() {
    let mut raw = example("sp2_r4_tuned.json");
    if let parahiggs_cli::config::Choice::Explicit(ref mut flags) = raw.flags {
        flags[1] = vec![vec!["1".into(), "2".into()], vec!["2".into(), "4".into()]];
    }
    match raw.validate() {
        Err(ConfigError::Invalid(msgs)) => {
            assert!(msgs.iter().any(|m| m.contains("flag")), "{msgs:?}")
        }
        other => panic!("{other:?}"),
    }
}

fn task<'a>(report: &'a Report, name: &str) -> &'a Value {
    let t = report.task(name).unwrap();
    assert_eq!(t.status, "ok", "{name}: {:?}", t.error);
    t.result.as_ref().unwrap()
}

#[test]
fn sp2_r5_full_report() {
    let job = example("sp2_r5.json").validate().unwrap();
    let report = run_report(&job);
    assert!(report.all_ran());
    let names: Vec<&str> = report.tasks.iter().map(|t| t.task.as_str()).collect();
    assert_eq!(
        names,
        [
            "sections",
            "hitchin",
            "equivariance",
            "very-stable",
            "stability",
            "serre",
            "dimensions"
        ]
    );
    assert_eq!(task(&report, "sections")["strong"]["dimension"], 2);
    let vs = task(&report, "very-stable");
    assert_eq!(vs["verdict"], "strongly very stable");
    assert_eq!(vs["method"], "pencil-gcd-k2");
    assert_eq!(task(&report, "serre")["passed"], true);
    assert_eq!(task(&report, "serre")["h1"], 2);
    assert_eq!(task(&report, "equivariance")["passed"], true);
}

#[test]
fn dimensions_task_for_one_point() {
    let job = parse_config(&sp2(r#"["0"]"#, r#"["dimensions"]"#)).unwrap();
    let report = run_report(&job);
    let d = task(&report, "dimensions");
    assert_eq!(d["group"], "Sp(2)");
    assert_eq!(d["dimension"], 8);
    assert_eq!(d["dimension_from_roots"], 8);
}

#[test]
fn task_failures_stay_in_the_report() {
    let mut raw = example("so3_r4.json");
    raw.tasks = vec!["stability".into(), "dimensions".into()];
    let report = run_report(&raw.validate().unwrap());
    let st = report.task("stability").unwrap();
    assert_eq!(st.status, "error");
    assert!(st.error.as_deref().unwrap().contains("rank"));
    assert_eq!(report.task("dimensions").unwrap().status, "ok");
}

fn has_float(v: &Value) -> bool {
    match v {
        Value::Number(n) => n.is_f64(),
        Value::Array(a) => a.iter().any(has_float),
        Value::Object(o) => o.values().any(has_float),
        _ => false,
    }
}

#[test]
fn report_round_trips_without_floats() {
    let job = example("sp2_r4_tuned.json").validate().unwrap();
    let report = run_report(&job);
    let text = report.to_json();
    let back: Report = serde_json::from_str(&text).unwrap();
    assert_eq!(back, report);
    assert_eq!(back.to_json(), text);
    assert!(!has_float(&serde_json::from_str(&text).unwrap()));
    let vs = task(&report, "very-stable");
    assert_eq!(vs["verdict"], "not strongly very stable");
    assert_eq!(vs["nilpotent_fiber"].as_array().unwrap().len(), 10);
    // rationals are always written with a denominator
    assert!(vs["witness_coordinates"][0].as_str().unwrap().contains('/'));
}

#[test]
fn corpus_is_deterministic_and_valid() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let written = emit_examples(a.path());
    emit_examples(b.path());
    assert!(written.len() >= 6);
    for (path, res) in &written {
        res.as_ref().unwrap();
        let name = path.file_name().unwrap();
        assert_eq!(
            std::fs::read(path).unwrap(),
            std::fs::read(b.path().join(name)).unwrap()
        );
        let job = load_config(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert!(job.bundle.validate().is_empty());
    }
    for (_, cfg) in examples() {
        assert_eq!(
            parahiggs_cli::config::parse_raw(&render(&cfg)).unwrap(),
            cfg
        );
    }
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_parahiggs"))
}

fn write(dir: &Path, name: &str, text: &str) -> std::path::PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(
        dir.path(),
        "good.json",
        &sp2(r#"["0", "1", "2"]"#, r#"["sections", "serre"]"#),
    );
    let out = dir.path().join("report.json");
    let o = bin()
        .args([
            "check",
            good.to_str().unwrap(),
            "--task",
            "serre",
            "--seed",
            "9",
            "--out",
        ])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let report: Report = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report.seed, 9);
    assert_eq!(report.tasks.len(), 1);

    let bad = write(
        dir.path(),
        "bad.json",
        &sp2(r#"["0", "0"]"#, r#"["sections"]"#),
    );
    let o = bin()
        .args(["check", bad.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("repeated"));

    let o = bin()
        .args(["check", "/nonexistent/config.json"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));

    let o = bin().args(["dim", "sp", "1", "2", "1"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["dimension"], 8);
    let o = bin()
        .args(["dim", "so-even", "2", "2", "1"])
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["dimension"], 16);
    let o = bin().args(["dim", "g2", "1", "2", "1"]).output().unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn corpus_subcommand_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg");
    let rep = dir.path().join("rep");
    let o = bin()
        .args([
            "corpus",
            cfg.to_str().unwrap(),
            "--out",
            rep.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let n = std::fs::read_dir(&rep).unwrap().count();
    assert_eq!(n, examples().len());
}
