use std::fs;
use std::process::Command;

fn bilms() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bilms"))
}

fn write_cfg(dir: &std::path::Path, body: &str) -> std::path::PathBuf {
    let p = dir.join("cfg.json");
    fs::write(&p, body).unwrap();
    p
}

#[test]
fn zero_taps_exits_3_with_message() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(dir.path(), r#"{"algorithm": "blms1", "taps": 0, "mu": 0.05, "steps": 10, "seed": 1}"#);
    let out = bilms()
        .args(["run", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.path().join("c.csv"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("taps must be ≥ 1"), "{err}");
    assert_eq!(err.trim().lines().count(), 1);
    assert!(!dir.path().join("c.csv").exists());
}

#[test]
fn unknown_algorithm_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(dir.path(), r#"{"algorithm": "blms3", "taps": 2, "mu": 0.05, "steps": 10, "seed": 1}"#);
    let out = bilms().args(["run", "--config"]).arg(&cfg).args(["--out", "x.csv"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("algorithm"));
}

#[test]
fn bad_flags_exit_2() {
    assert_eq!(bilms().arg("run").output().unwrap().status.code(), Some(2));
    assert_eq!(bilms().arg("frobnicate").output().unwrap().status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(dir.path(), r#"{"algorithm": "blms1", "taps": 2, "mu": 0.05, "steps": 10, "seed": 1}"#);
    let out = bilms()
        .args(["sweep", "--config"])
        .arg(&cfg)
        .args(["--mu-grid", "0.1,oops", "--out"])
        .arg(dir.path().join("sw"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_fd_step_env_exits_2() {
    let out = bilms().arg("verify").env("BILMS_FD_H", "-1").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_honours_fd_step_env() {
    let out = bilms().arg("verify").env("BILMS_FD_H", "2e-5").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("h = 2e-5"));
}

#[test]
fn seed_override_changes_curve() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(dir.path(), r#"{"algorithm": "clms", "taps": 2, "mu": 0.05, "steps": 20, "seed": 1}"#);
    let run = |extra: &[&str], name: &str| {
        let path = dir.path().join(name);
        let st = bilms().args(["run", "--config"]).arg(&cfg).arg("--out").arg(&path).args(extra).status().unwrap();
        assert!(st.success());
        fs::read_to_string(path).unwrap()
    };
    let base = run(&[], "a.csv");
    assert_eq!(base, run(&["--seed", "1"], "b.csv"));
    assert_ne!(base, run(&["--seed", "2"], "c.csv"));
}

#[test]
fn sweep_writes_curves_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(dir.path(), r#"{"algorithm": "blms1", "taps": 4, "mu": 0.05, "steps": 400, "seed": 42}"#);
    let out_dir = dir.path().join("sweep");
    let st = bilms()
        .args(["sweep", "--config"])
        .arg(&cfg)
        .args(["--mu-grid", "0.01,0.05,2.0", "--out"])
        .arg(&out_dir)
        .status()
        .unwrap();
    assert!(st.success());
    let csvs = fs::read_dir(&out_dir).unwrap().count();
    assert_eq!(csvs, 4);
    let summary = fs::read_to_string(out_dir.join("summary.csv")).unwrap();
    let rows: Vec<_> = summary.lines().skip(1).collect();
    assert!(rows[0].ends_with("false") && rows[1].ends_with("false"));
    assert!(rows[2].ends_with("true"), "mu = 2 should diverge: {}", rows[2]);
    let diverged = fs::read_to_string(out_dir.join(bilms_cli::sweep_file_name(2, 2.0))).unwrap();
    assert!(diverged.trim_end().ends_with(",inf,inf"));
}

#[test]
fn demo_runs() {
    let dir = tempfile::tempdir().unwrap();
    let out = bilms().arg("demo").arg("--out").arg(dir.path()).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("blms1,4,0.05,2000,42") && text.contains("clms,4,0.05,2000,42"));
    assert!(dir.path().join("demo_blms1.csv").exists());
}
