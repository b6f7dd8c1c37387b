use std::path::PathBuf;
use std::process::{Command, Output};

fn rsp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rsp")).args(args).env_remove("RSP_STEP_LIMIT").output().unwrap()
}

fn tmp(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rsp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const NON_POLYCYCLIC: &str = "rsp 1\ngen x1 block 1 order inf\ngen x2 block 2 order inf\ncnj x1 x2 = x1^2\n";

#[test]
fn validate_exit_codes() {
    let ok = tmp("ok.txt", NON_POLYCYCLIC);
    assert_eq!(rsp(&["validate", ok.to_str().unwrap()]).status.code(), Some(0));
    let bad = tmp("bad.txt", "rsp 1\ngen a block 1 order inf\ngen b block 2 order inf\ngen c block 2 order inf\ncnj b c = b^3\n");
    let o = rsp(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("cnj b c"));
    let syntax = tmp("syntax.txt", "rsp 1\ngen a block one order inf\n");
    let o = rsp(&["validate", syntax.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(rsp(&["validate", "/nonexistent/rsp.txt"]).status.code(), Some(2));
}

#[test]
fn check_reports_the_witness() {
    let f = tmp("np.txt", NON_POLYCYCLIC);
    let o = rsp(&["check", f.to_str().unwrap(), "--method", "both", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["agree"], true);
    let solv = &v["reports"][0];
    assert_eq!(solv["method"], "solv");
    assert_eq!(solv["failing_generator"], "x2");
    assert_eq!(solv["failures"][0]["condition"], "5");
    assert_eq!(solv["failures"][0]["section"]["det"], "2");
    assert_eq!(v["reports"][1]["failures"][0]["condition"], "mu");
}

#[test]
fn gen_check_and_normal_form() {
    let dir = std::env::temp_dir().join(format!("rsp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("q8.txt");
    assert_eq!(rsp(&["gen", "q8", "-o", path.to_str().unwrap()]).status.code(), Some(0));
    let p = path.to_str().unwrap();
    let o = rsp(&["check", p, "--method", "overlap"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("consistent"));
    let o = rsp(&["nf", p, "x1 x2 x1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "x2");
    let np = tmp("np2.txt", NON_POLYCYCLIC);
    assert_eq!(rsp(&["nf", np.to_str().unwrap(), "x1"]).status.code(), Some(1));
}

#[test]
fn step_limit_from_environment() {
    let f = tmp("ut.txt", &stdout(&rsp(&["gen", "ut(6,2)"])));
    let o = Command::new(env!("CARGO_BIN_EXE_rsp"))
        .args(["check", f.to_str().unwrap()])
        .env("RSP_STEP_LIMIT", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("aborted"));
}

#[test]
fn bench_json() {
    let o = rsp(&["bench", "--inputs", "ut(4,2)", "heisenberg", "--methods", "solv", "overlap", "--reps", "1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["records"].as_array().unwrap().len(), 4);
    assert_eq!(v["agree"], true);
    assert_eq!(rsp(&["bench", "--inputs", "nothing(3)"]).status.code(), Some(2));
}
