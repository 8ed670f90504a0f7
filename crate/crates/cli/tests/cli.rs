use std::path::PathBuf;
use std::process::{Command, Output};

fn hwpkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hwpkit")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hwpkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn dumps_clock_matrix() {
    let o = hwpkit(&["ops", "clock", "--d", "3"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["d"], 3);
    let z00 = &v["rows"][0][0];
    assert!((z00[0].as_f64().unwrap() + 0.5).abs() < 1e-15);
    assert!((z00[1].as_f64().unwrap() + 0.75f64.sqrt()).abs() < 1e-15);
    assert_eq!(v["rows"][1][1][0], 1.0);
}

#[test]
fn group_reports_series() {
    let o = hwpkit(&["group", "--d", "5"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["derived_series_sizes"], serde_json::json!([250, 125, 5, 1]));
    assert_eq!(v["nilpotent"], false);
    let o = hwpkit(&["group", "--group", "hw", "--d", "3"]);
    assert_eq!(json(&o)["nilpotent"], true);
}

#[test]
fn verify_group_passes() {
    let o = hwpkit(&["verify", "group", "--d", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["passed"], true);
    let hwp = v["series"]
        .as_array()
        .unwrap()
        .iter()
        .find(|s| s["group"] == "HWP")
        .unwrap();
    assert_eq!(hwp["derived_series_sizes"], serde_json::json!([250, 125, 5, 1]));
    assert!(!v["manifest"].as_array().unwrap().is_empty());
}

#[test]
fn injected_fault_is_named() {
    let o = hwpkit(&["verify", "ww", "--d", "3", "--inject-fault", "unified-fourier-sign"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["failures"], serde_json::json!(["unified-fourier"]));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(hwpkit(&["ops", "fourier", "--d", "4"]).status.code(), Some(2));
    assert_eq!(hwpkit(&["nonsense"]).status.code(), Some(2));
    assert_eq!(hwpkit(&["noise", "--d", "7", "--paper-vectors"]).status.code(), Some(2));
    assert_eq!(
        hwpkit(&["ww", "--operator", "/nonexistent.json"]).status.code(),
        Some(2)
    );
}

#[test]
fn table1_rounds_for_presentation() {
    let o = hwpkit(&["table1", "--format", "csv", "--round", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 19);
    assert_eq!(lines[5], "0,0,0,0.49,0.23,0.29,0.99,0.0");
    assert!(lines[16].starts_with("1,1,-1,0.28,-0.11,0.09,0.77"));

    let path = scratch("table1.csv");
    let o = hwpkit(&[
        "table1",
        "--format",
        "csv",
        "--round",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success() && o.stdout.is_empty());
    let full = std::fs::read_to_string(&path).unwrap();
    let row: Vec<f64> = full
        .lines()
        .nth(5)
        .unwrap()
        .split(',')
        .map(|x| x.parse().unwrap())
        .collect();
    assert!((row[3] - 0.4921).abs() < 1e-4 && row[3] != 0.49);
    assert!((row[5] - (row[3] * row[3] + row[4] * row[4])).abs() < 1e-15);
}

#[test]
fn ww_reads_operator_files_and_is_reproducible() {
    let op = scratch("dp.json");
    let o = hwpkit(&[
        "ops",
        "dp",
        "--d",
        "5",
        "--alpha",
        "1",
        "--beta",
        "-2",
        "--nu",
        "1",
        "--out",
        op.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let a = scratch("a.csv");
    let b = scratch("b.csv");
    for out in [&a, &b] {
        let o = hwpkit(&[
            "ww",
            "--operator",
            op.to_str().unwrap(),
            "--format",
            "csv",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(o.status.success());
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    assert_eq!(String::from_utf8(ta).unwrap().lines().count(), 1 + 2 * 25);
}

#[test]
fn noise_is_deterministic_across_thread_counts() {
    let args = [
        "noise",
        "--d",
        "5",
        "--reference-vectors",
        "--trials",
        "400",
        "--seed",
        "3",
    ];
    let a = hwpkit(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_hwpkit"))
        .args(args)
        .env("HWPKIT_THREADS", "1")
        .output()
        .unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["e2_lt_e1"], true);
    assert!(v["mean_e1"].as_f64().unwrap() > v["mean_e2"].as_f64().unwrap());
}

#[test]
fn frame_and_dihedral_outputs() {
    let o = hwpkit(&["frame", "--d", "5", "--kind", "hw", "--format", "csv"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 26);
    let o = hwpkit(&["dihedral", "--d", "3", "--axis", "x", "--a", "1", "--nu", "1"]);
    assert!(o.status.success());
    let v = json(&o);
    assert!((v["rows"][0][0][0].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!(v["rows"][1][1][0].as_f64().unwrap().abs() < 1e-12);
}
