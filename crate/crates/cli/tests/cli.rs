use std::process::{Command, Output};

use mock_theta::verify::CheckReport;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mock-theta"))
        .args(args)
        .env_remove("MOCK_THETA_CONFIG")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn expand_psi() {
    let o = run(&["expand", "psi", "--order", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1 + q + q^3 + q^6 + O(q^7)");
}

#[test]
fn expand_vanishing_theta() {
    let o = run(&["expand", "j(1,0,1)", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["coeffs"].as_array().unwrap().is_empty());
}

#[test]
fn parse_errors_exit_two() {
    let o = run(&["expand", "j(q"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 3"));
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["rank-table", "41"]).status.code(), Some(2));
}

#[test]
fn rank_table_rows() {
    let o = run(&["rank-table", "4"]);
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "n\tm\tcount");
    assert_eq!(rows.len(), 13);
    let zero = stdout(&run(&["rank-table", "0"]));
    assert_eq!(zero.lines().nth(1), Some("0\t0\t1"));
}

#[test]
fn verify_prelim_passes() {
    let o = run(&["verify", "--suite", "prelim", "--order", "60", "--jobs", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 unexpected"));
}

#[test]
fn degenerate_parameter_exits_one() {
    let o = run(&["verify", "--suite", "entry1", "--t", "zeta^6", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let reports: Vec<CheckReport> = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(reports.iter().any(|r| r.error.is_some()));
    assert!(reports.iter().all(|r| r.mismatch.is_none()));
}

#[test]
fn config_file_and_override() {
    let dir = std::env::temp_dir().join(format!("mock-theta-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cfg.toml");
    std::fs::write(&path, "default_order = 12\nformat = \"json\"\nentry2_samples = [\"zeta^5\"]\n").unwrap();
    let p = path.to_str().unwrap();
    let o = run(&["verify", "--suite", "entry2", "--config", p]);
    assert_eq!(o.status.code(), Some(0));
    let reports: Vec<CheckReport> = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(reports.iter().all(|r| r.order == 12 && r.id.ends_with("[t=zeta^5]")));
    let o = run(&["verify", "--suite", "entry2", "--config", p, "--format", "text", "--order", "15"]);
    assert!(stdout(&o).contains("order=15"));
    std::fs::write(&path, "default_order = 3\n").unwrap();
    assert_eq!(run(&["expand", "psi", "--config", p]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}
