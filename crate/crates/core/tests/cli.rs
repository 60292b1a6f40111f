use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn chainlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chainlab")).args(args).output().expect("spawn chainlab")
}

fn write_config(dir: &Path, body: &str) -> String {
    let p = dir.join("run.json");
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn run(cmd: &str, cfg: &str, out: &Path, extra: &[&str]) -> Output {
    let mut args = vec![cmd, "--config", cfg, "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    chainlab(&args)
}

#[test]
fn verify_g_passes_and_writes_report() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), r#"{"delta": 1000.0}"#);
    let out = dir.path().join("out");
    let o = run("verify-g", &cfg, &out, &[]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("verify_g.json")).unwrap()).unwrap();
    assert!(report.is_object());
}

#[test]
fn small_gap_exceeds_tolerance() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), r#"{"delta": 3.0}"#);
    assert_eq!(code(&run("verify-g", &cfg, &dir.path().join("o"), &[])), 1);
}

#[test]
fn tolerance_flag_overrides_config() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), r#"{"delta": 1000.0}"#);
    assert_eq!(code(&run("verify-g", &cfg, &dir.path().join("o"), &["--tolerance", "1e-9"])), 1);
    assert_eq!(code(&run("verify-g", &cfg, &dir.path().join("o"), &["--tolerance", "-1"])), 2);
}

#[test]
fn bad_configs_exit_two() {
    let dir = TempDir::new().unwrap();
    let o = dir.path().join("o");
    for body in ["{not json", r#"{"delta": 1000.0, "bogus": 1}"#, r#"{"J": -1.0}"#, r#"{"zeno": {"trials": 0}}"#] {
        let cfg = write_config(dir.path(), body);
        let cmd = if body.contains("zeno") { "zeno" } else { "verify-g" };
        assert_eq!(code(&run(cmd, &cfg, &o, &[])), 2, "{body}");
    }
    let missing = dir.path().join("absent.json");
    assert_eq!(code(&run("verify-g", missing.to_str().unwrap(), &o, &[])), 2);
}

#[test]
fn unknown_flags_and_commands_exit_two() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "{}");
    assert_eq!(code(&chainlab(&["verify-g", "--config", &cfg, "--nope"])), 2);
    assert_eq!(code(&chainlab(&["frobnicate", "--config", &cfg])), 2);
    assert_eq!(code(&chainlab(&["verify-g"])), 2);
}

#[test]
fn help_works_everywhere() {
    assert_eq!(code(&chainlab(&["--help"])), 0);
    for cmd in ["verify-g", "verify-m", "sweep", "synthesize", "zeno", "six-settings"] {
        let o = chainlab(&[cmd, "--help"]);
        assert_eq!(code(&o), 0, "{cmd}");
        assert!(String::from_utf8_lossy(&o.stdout).contains("--config"), "{cmd}");
    }
}

#[test]
fn zeno_output_is_reproducible_across_thread_counts() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), r#"{"zeno": {"trials": 200}}"#);
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    let ca = code(&run("zeno", &cfg, &a, &["--seed", "7", "--threads", "1"]));
    let cb = code(&run("zeno", &cfg, &b, &["--seed", "7", "--threads", "3"]));
    assert_eq!(ca, cb);
    assert!(ca == 0 || ca == 1);
    for f in ["zeno.json", "zeno_never.csv", "zeno_every_4.csv", "zeno_every_1.csv"] {
        assert_eq!(fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap(), "{f}");
    }
}
