use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn casorati(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_casorati"))
        .args(args)
        .env_remove("CASORATI_PRECISION_BITS")
        .output()
        .unwrap()
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn without_timestamp(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timestamp");
    v
}

#[test]
fn exit_codes() {
    assert_eq!(casorati(&["identities", "--trials", "2", "--identities", "eq1,cas-real-theorem"]).status.code(), Some(0));
    assert_eq!(casorati(&["identities", "--trials", "3", "--identities", "eq3", "--fault", "eq3-shift"]).status.code(), Some(1));
    assert_eq!(casorati(&["identities", "--bogus"]).status.code(), Some(2));
    assert_eq!(casorati(&["--trials", "2"]).status.code(), Some(2));
    assert_eq!(casorati(&["rdqm", "--c", "3/2"]).status.code(), Some(2));
    assert_eq!(casorati(&["rdqm", "--n", "1"]).status.code(), Some(2));
    assert_eq!(casorati(&["identities", "--identities", "eq9"]).status.code(), Some(2));
    assert_eq!(casorati(&["rdqm", "--dv=", "--de", "1,2", "--n", "0"]).status.code(), Some(3));
    assert_eq!(casorati(&["--help"]).status.code(), Some(0));
}

#[test]
fn reports_differ_only_in_the_timestamp() {
    let run = || {
        let out = casorati(&["idqm", "--seed", "17"]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        serde_json::from_slice::<Value>(&out.stdout).unwrap()
    };
    let (ra, rb) = (run(), run());
    assert_eq!(ra["schema"], 1);
    assert!(ra["timestamp"]["unix_seconds"].as_u64().unwrap() > 0);
    assert_eq!(without_timestamp(ra), without_timestamp(rb));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# small run\ntrials = 1\nidentities = eq2\ngamma = 1/3\nseed = 5\n").unwrap();
    let out = dir.path().join("r.json");
    let o = casorati(&["identities", "--config", cfg.to_str().unwrap(), "--trials", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["config"]["trials"], 2);
    assert_eq!(r["config"]["seed"], 5);
    assert_eq!(r["summary"]["total"], 2);
    assert!(r["identities"].as_array().unwrap().iter().all(|c| c["identity"] == "eq2"));

    std::fs::write(&cfg, "trials = 1\ncolour = red\n").unwrap();
    assert_eq!(casorati(&["identities", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn precision_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = Command::new(env!("CARGO_BIN_EXE_casorati"))
        .args(["oqm", "--dv", "0", "--n", "0", "--out", out.to_str().unwrap()])
        .env("CASORATI_PRECISION_BITS", "320")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&out)["config"]["precision"], 320);
}

#[test]
fn identity_witness_replays() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = casorati(&["identities", "--trials", "4", "--identities", "cas-imag-gauge", "--fault", "casoratian-entry:0:0", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let r = json(&out);
    let failing = r["identities"].as_array().unwrap().iter().find(|c| c["status"] == "fail").unwrap();
    let w = dir.path().join("w.json");
    std::fs::write(&w, failing.to_string()).unwrap();
    let back = dir.path().join("back.json");
    let o = casorati(&["--replay", w.to_str().unwrap(), "--out", back.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let b = json(&back);
    assert_eq!(b["lhs"], failing["lhs"]);
    assert_eq!(b["rhs"], failing["rhs"]);
}

#[test]
fn rdqm_writes_csv_and_pipeline_witness_replays() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("csv");
    let out = dir.path().join("r.json");
    let o = casorati(&["rdqm", "--dv=-0.6,-1.7", "--de", "1,2", "--n", "0", "--csv", csv.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let phi = std::fs::read_to_string(csv.join("phi_D0.csv")).unwrap();
    assert!(phi.starts_with("x,phi_D0 (precision 256 bits)"));
    assert!(phi.lines().count() > 41);
    let spec = std::fs::read_to_string(csv.join("spectrum.csv")).unwrap();
    assert_eq!(spec.lines().count(), 1 + 5);

    let o = casorati(&["rdqm", "--fault", "epsilon-parity", "--n", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let r = json(&out);
    let failing = r["pipelines"].as_array().unwrap().iter().find(|p| p["status"] == "fail").unwrap();
    assert_eq!(failing["witness"]["config"]["fault"], "epsilon-parity");
    let w = dir.path().join("w.json");
    std::fs::write(&w, failing.to_string()).unwrap();
    assert_eq!(casorati(&["--replay", w.to_str().unwrap()]).status.code(), Some(1));
}
