use std::path::PathBuf;
use std::process::Command;

fn fbasis(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_fbasis")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fbasis-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn expand_bj_prints_the_canonical_form() {
    let out = fbasis(&["expand", "bj", "--n", "2", "--j", "1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1);
    assert!(text.contains("b*[1] * c*[2]"), "{text}");
}

#[test]
fn expand_family_as_json() {
    let out = fbasis(&["expand", "family", "--n", "1", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["elements"].as_array().unwrap().len(), 4);
}

#[test]
fn verify_writes_a_report_that_reads_back() {
    let dir = scratch("verify");
    let path = dir.join("basis.json");
    let out = fbasis(&["verify", "basis", "--n", "2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("PASS base-n2-list"));
    assert!(stdout.contains("PASS rank-n2"));
    let back = fbasis(&["report", path.to_str().unwrap()]);
    assert!(back.status.success());
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn report_directory_comes_from_the_environment() {
    let dir = scratch("env");
    let out = Command::new(env!("CARGO_BIN_EXE_fbasis"))
        .args(["verify", "lr"])
        .env("FBASIS_REPORT_DIR", &dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.join("fbasis-lr.json").exists());
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(fbasis(&["verify", "basis", "--n", "9"]).status.code(), Some(2));
    assert_eq!(fbasis(&["verify", "nothing"]).status.code(), Some(2));
    assert_eq!(fbasis(&["expand", "bj", "--n", "2", "--j", "7"]).status.code(), Some(2));
    assert_eq!(fbasis(&["report", "/nonexistent/report.json"]).status.code(), Some(2));
}

#[test]
fn failed_reports_exit_with_one() {
    let dir = scratch("fail");
    let path = dir.join("r.json");
    assert!(fbasis(&["verify", "fock", "--n", "1", "--out", path.to_str().unwrap()]).status.success());
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    v["verdicts"][0]["status"] = "fail".into();
    v["passed"] = false.into();
    std::fs::write(&path, v.to_string()).unwrap();
    assert_eq!(fbasis(&["report", path.to_str().unwrap()]).status.code(), Some(1));
    std::fs::remove_dir_all(dir).unwrap();
}
