use std::path::Path;
use std::process::{Command, Output, Stdio};

use coherence::{make_family, StateFamilySpec};
use serde_json::Value;

fn coherence(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coherence"))
        .args(args)
        .env_remove("COHERENCE_SEED")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn manifest(out: &Path) -> Value {
    let text = std::fs::read_to_string(coherence::manifest::manifest_path(out)).unwrap();
    serde_json::from_str(&text).unwrap()
}

#[test]
fn eval_reports_maximum_coherence() {
    let dir = tempfile::tempdir().unwrap();
    let state = dir.path().join("mcp3.json");
    make_family(&StateFamilySpec::MaxCoherentPure, 3)
        .unwrap()
        .write_json(&state)
        .unwrap();

    let o = coherence(&["eval", state.to_str().unwrap(), "--p", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["c_lp"], 2.0);
    assert_eq!(report["d"], 3);
    assert!(report.get("t").is_some());

    let out = dir.path().join("report.json");
    let o = coherence(&["eval", state.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(out.exists());
    assert_eq!(manifest(&out)["command"], "eval");
}

#[test]
fn eval_omits_t_at_qubit() {
    let dir = tempfile::tempdir().unwrap();
    let state = dir.path().join("q.json");
    make_family(&StateFamilySpec::Mcms { a: 0.5 }, 2)
        .unwrap()
        .write_json(&state)
        .unwrap();
    let o = coherence(&["eval", state.to_str().unwrap(), "--p", "2"]);
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(report.get("t").is_none());
    assert!((report["m_l"].as_f64().unwrap() - 0.75).abs() < 1e-15);
}

#[test]
fn malformed_json_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let state = dir.path().join("bad.json");
    std::fs::write(&state, "{\"dim\": 2, \"re\": [[1, 0], [0").unwrap();
    let o = coherence(&["eval", state.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("parse error"), "{}", stderr(&o));
}

#[test]
fn invalid_states_and_flags_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let state = dir.path().join("np.json");
    std::fs::write(
        &state,
        r#"{"dim": 2, "mode": "strict", "re": [[0.5, 0.6], [0.6, 0.5]], "im": [[0, 0], [0, 0]]}"#,
    )
    .unwrap();
    let o = coherence(&["eval", state.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("positive semidefinite"), "{}", stderr(&o));

    assert_eq!(coherence(&["verify", "--bogus"]).status.code(), Some(2));
    assert_eq!(
        coherence(&["verify", "--dim", "2", "--trials", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(coherence(&["tetra", "--p", "2"]).status.code(), Some(2));
    assert_eq!(
        coherence(&["sweep", "--panel", "count", "--mode", "strict"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(coherence(&[]).status.code(), Some(2));
    assert_eq!(coherence(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_writes_jsonl_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("verify.jsonl");
    let o = coherence(&[
        "verify",
        "--dim",
        "2..3",
        "--p",
        "1",
        "--p",
        "2",
        "--trials",
        "30",
        "--seed",
        "5",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("l2_triality"));
    let lines: Vec<Value> = std::fs::read_to_string(&out)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(lines.iter().any(|v| v["identity_id"] == "y_tradeoff"));
    assert!(lines.iter().any(|v| v["axiom_id"] == "a4"));
    assert!(lines.iter().all(|v| v.get("passed").is_none_or(|p| p == true)));
    let m = manifest(&out);
    assert_eq!(m["seed"], 5);
    assert_eq!(m["config"]["trials"], 30);
}

#[test]
fn verify_exit_code_reports_failures() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    // zero tolerance turns rounding-level residuals into failures
    std::fs::write(
        &cfg,
        r#"{"dim": "3", "p": [1.5], "trials": 20, "tolerances": {"equality": 0.0, "tight_equality": 0.0, "inequality": 0.0}}"#,
    )
    .unwrap();
    let o = coherence(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stderr(&o).contains("first failing identity"));
}

#[test]
fn seed_falls_back_to_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("v.jsonl");
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_coherence"));
        c.args([
            "verify",
            "--dim",
            "2",
            "--p",
            "1",
            "--trials",
            "5",
            "--out",
            out.to_str().unwrap(),
        ])
        .args(extra)
        .env_remove("COHERENCE_SEED")
        .stdout(Stdio::null());
        if let Some(s) = env {
            c.env("COHERENCE_SEED", s);
        }
        assert!(c.status().unwrap().success());
        manifest(&out)["seed"].as_u64().unwrap()
    };
    assert_eq!(run(None, &[]), 0);
    assert_eq!(run(Some("77"), &[]), 77);
    assert_eq!(run(Some("77"), &["--seed", "3"]), 3);
}

#[test]
fn sweep_csv_and_flags_override_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.json");
    std::fs::write(
        &cfg,
        r#"{"d": 4, "p_values": [1.0], "sweep_kind": "count_sweep", "fixed_value": 0.05, "grid": [1, 2, 3]}"#,
    )
    .unwrap();
    let out = dir.path().join("s.csv");
    let o = coherence(&[
        "sweep",
        "--config",
        cfg.to_str().unwrap(),
        "--p",
        "1",
        "--p",
        "1.5",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "grid_value,x_p1,y_p1,c_lp_sq_p1,x_p1.5,y_p1.5,c_lp_sq_p1.5,c_l1_sq_over_d,strict_psd"
    );
    assert_eq!(lines.count(), 3);
    let m = manifest(&out);
    assert_eq!(m["config"]["d"], 4);
    assert_eq!(m["rows"].as_array().unwrap().len(), 3);
}

#[test]
fn sweep_panel_a_flags_non_psd_row() {
    let o = coherence(&["sweep", "--panel", "count"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<String> = stdout(&o).lines().skip(1).map(str::to_owned).collect();
    let flags: Vec<&str> = rows.iter().map(|r| r.rsplit(',').next().unwrap()).collect();
    assert_eq!(flags, ["true", "false", "true"]);
}

#[test]
fn sweep_output_is_reproducible() {
    let a = coherence(&["sweep", "--panel", "magnitude", "--p", "1", "--p", "1.5"]);
    let b = coherence(&["sweep", "--panel", "magnitude", "--p", "1", "--p", "1.5"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn tetra_formats() {
    let o = coherence(&["tetra", "--dim", "4", "--p", "1.5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows: Vec<Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(rows.iter().all(|r| r["passed"] == true));
    assert_eq!(rows[0]["region"], "vertex_m");

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.csv");
    let o = coherence(&["tetra", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(&out)
        .unwrap()
        .starts_with("region,state,d,p,"));
    assert_eq!(manifest(&out)["command"], "tetra");
}
