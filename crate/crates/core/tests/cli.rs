use std::process::{Command, Output};

fn toric_lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric-lab")).args(args).output().unwrap()
}

#[test]
fn height_table() {
    let out = toric_lab(&["height", "--point", "(2, 1/2)", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("coordinate,value,height\n"));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn exit_codes() {
    assert_eq!(toric_lab(&["equidist", "--curve", "y - x", "--n", "0"]).status.code(), Some(2));
    assert_eq!(toric_lab(&["height", "--point", "(1, "]).status.code(), Some(2));
    assert_eq!(toric_lab(&["equidist", "--threads", "0", "--curve", "y - x"]).status.code(), Some(2));
    assert_eq!(toric_lab(&["equidist", "--curve", "x + y + z - 1", "--n", "10"]).status.code(), Some(4));
}

#[test]
fn config_file_overrides_flags() {
    let dir = std::env::temp_dir().join(format!("toric-lab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("orbit.json");
    std::fs::write(&cfg, r#"{"point": "(zeta(5), 1)", "K": 1}"#).unwrap();
    let out_path = dir.join("out.json");
    let out = toric_lab(&[
        "orbit",
        "--point",
        "(zeta(3), 1)",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let record: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert!(record.to_string().contains("zeta(5)"));

    std::fs::write(&cfg, r#"{"kind": "height"}"#).unwrap();
    assert_eq!(toric_lab(&["orbit", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}
