use std::process::Command;

fn opineq() -> Command {
    Command::new(env!("CARGO_BIN_EXE_opineq"))
}

#[test]
fn run_writes_identical_json_twice() {
    let dir = tempfile::tempdir().unwrap();
    let out = |name: &str| {
        let path = dir.path().join(name);
        let status = opineq()
            .args([
                "run",
                "--dim",
                "3",
                "--interval",
                "0.5:4",
                "--fn",
                "power:2",
                "--weight",
                "bump",
            ])
            .args([
                "--seeds",
                "0:4",
                "--theorems",
                "all",
                "--quad",
                "8x8",
                "--format",
                "json",
                "--out",
            ])
            .arg(&path)
            .status()
            .unwrap();
        assert!(status.success());
        std::fs::read_to_string(path).unwrap()
    };
    let first = out("a.json");
    assert_eq!(first, out("b.json"));
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["instances"], 5);
    assert_eq!(v["theorems"]["levin_steckin"]["passes"], 5);
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn csv_report_has_fixed_header() {
    let out = opineq()
        .args([
            "run",
            "--seeds",
            "0:1",
            "--theorems",
            "levin_steckin,fejer",
            "--format",
            "csv",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "theorem_id,instances,passes,worst_margin,tightness_min,tightness_median,tightness_max"
    );
    assert!(lines.next().unwrap().starts_with("fejer,2,2,"));
}

#[test]
fn domain_failure_exits_nonzero() {
    let out = opineq()
        .args([
            "run",
            "--interval",
            "-1:1",
            "--fn",
            "log",
            "--seeds",
            "0:0",
            "--theorems",
            "levin_steckin",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["failures"][0]["theorem_id"], "levin_steckin");
}

#[test]
fn tolerance_comes_from_environment() {
    let out = opineq()
        .env("OPINEQ_TOL", "not-a-number")
        .args(["run", "--seeds", "0:0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("OPINEQ_TOL"));
}

#[test]
fn examples_pass() {
    let out = opineq()
        .args([
            "examples",
            "--dim",
            "3",
            "--interval",
            "0.5:4",
            "--seed",
            "7",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 13);
    assert!(text.lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn validate_weight_from_table() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.csv");
    std::fs::write(&path, "t,p\n0,0\n0.5,1\n1,0\n").unwrap();
    let out = opineq()
        .arg("validate-weight")
        .arg(format!("table:{}", path.display()))
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("nondecreasing_on_first_half"));

    std::fs::write(&path, "t,p\n0,0\n1,1\n").unwrap();
    let out = opineq()
        .arg("validate-weight")
        .arg(format!("table:{}", path.display()))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
