use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_complete-objects"));
    for (k, _) in std::env::vars().filter(|(k, _)| k.starts_with("COMPLETE_")) {
        c.env_remove(k);
    }
    c
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("complete-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn named_examples_exit_zero() {
    let out = bin().args(["--mode", "paper-examples"]).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["failures"], 0);
    assert_eq!(v["schema_version"], 1);
}

#[test]
fn env_selects_the_mode_and_out_writes_a_file() {
    let path = scratch("report.json");
    let out = bin()
        .env("COMPLETE_MODE", "paper-examples")
        .args(["--out", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["mode"], "paper-examples");
}

#[test]
fn errors_exit_two() {
    assert_eq!(bin().args(["--mode", "nope"]).output().unwrap().status.code(), Some(2));
    assert_eq!(bin().args(["--jobs", "0"]).output().unwrap().status.code(), Some(2));
    let out = bin().args(["--catalog", "/nonexistent.json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn failed_entries_exit_one() {
    // pin a wrong expectation so the classify report fails
    let path = scratch("wrong.json");
    std::fs::write(
        &path,
        r#"{"schema":1,"groups":[{"name":"Z3","cyclic":3,"expect":{"proto_complete":true}}]}"#,
    )
    .unwrap();
    let out = bin().args(["--catalog", path.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn single_group_file() {
    let path = scratch("s3.json");
    std::fs::write(
        &path,
        r#"{"name":"S3","permutations":{"degree":3,"generators":[[1,0,2],[1,2,0]]}}"#,
    )
    .unwrap();
    let out = bin().args(["group", path.to_str().unwrap()]).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["strong_complete"]["holds"], true);
    assert_eq!(v["decomposition"]["quotient_order"], 6);
}

#[test]
fn build_catalog_reproduces_the_shipped_file() {
    let out = bin().arg("build-catalog").output().unwrap();
    assert!(out.status.success());
    let built: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let shipped = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/catalog24.json")).unwrap();
    let shipped: serde_json::Value = serde_json::from_str(&shipped).unwrap();
    assert_eq!(built, shipped);
}
