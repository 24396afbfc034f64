//! Black-box tests of the `btk` binary: output contents and exit codes.

use std::process::Command;

fn btk(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_btk")).args(args).output().unwrap()
}

#[test]
fn bounds_reports_exact_constant() {
    let out = btk(&["bounds", "--varpi", "1/2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("480/151"), "missing constant in: {text}");
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["command"], "bounds");
    assert!(v["wall_time_ms"].is_number());
}

#[test]
fn kl_matches_closed_form() {
    let out = btk(&["kl", "--q", "5", "--z", "1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let kl = v["result"]["kl"].as_f64().unwrap();
    // S(1,1;5) = 2 + e(2/5) + e(3/5) = 2 + 2 cos(4 pi/5)
    let expect = (2.0 + 2.0 * (4.0 * std::f64::consts::PI / 5.0).cos()) / 5.0f64.sqrt();
    assert!((kl - expect).abs() < 1e-12);
}

#[test]
fn pi_ap_small_value() {
    let out = btk(&["pi-ap", "--x", "100", "--q", "3", "--a", "1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["count"].as_u64().unwrap(), 11);
}

#[test]
fn plan_flags_on_feasible_point() {
    let out = btk(&["plan", "--x", "1e12", "--q", "1000003"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let flags = &v["result"]["flags"];
    for name in [
        "h_above_shift_floor",
        "m_above_window_floor",
        "k_below_half_modulus",
        "eps_prime_positive",
    ] {
        assert_eq!(flags[name], true, "flag {name} not set in {flags}");
    }
}

#[test]
fn exit_codes() {
    // unknown subcommand -> 64
    assert_eq!(btk(&["frobnicate"]).status.code(), Some(64));
    // bad flag value -> 65
    assert_eq!(btk(&["kl", "--q", "notanumber", "--z", "1"]).status.code(), Some(65));
    // domain error (composite modulus) -> 2
    assert_eq!(btk(&["kl", "--q", "15", "--z", "1"]).status.code(), Some(2));
    // help -> 0
    assert_eq!(btk(&["--help"]).status.code(), Some(0));
}

#[test]
fn malformed_config_rejected() {
    let path = std::env::temp_dir().join("cli-bad-config.json");
    std::fs::write(&path, "{not json").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_btk"))
        .args(["quint", "--config"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(65));
}

#[test]
fn csv_table_round_trip() {
    let path = std::env::temp_dir().join("cli-table-q13.csv");
    let out = Command::new(env!("CARGO_BIN_EXE_btk"))
        .args(["table", "--q", "13", "--format", "csv", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("a,kl"));
    assert_eq!(lines.count(), 13);
}

#[test]
fn json_reports_validate_against_schema() {
    let schema_text = std::fs::read_to_string(
        concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/report-schema.json"),
    )
    .unwrap();
    let schema: serde_json::Value = serde_json::from_str(&schema_text).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    for args in [
        vec!["kl", "--q", "13", "--z", "4"],
        vec!["weil", "--q", "101", "--trials", "50"],
        vec!["pi-ap", "--x", "1000", "--q", "7", "--a", "2"],
        vec!["bounds", "--varpi", "0.5"],
        vec!["optimize", "--varpi", "1/2"],
        vec!["plan", "--x", "1e12", "--q", "1000003"],
    ] {
        let out = btk(&args);
        assert!(out.status.success(), "{args:?} failed");
        let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        let errors: Vec<String> =
            validator.iter_errors(&report).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
    }
}
