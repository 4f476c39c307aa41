use std::process::{Command, Output};

fn renyi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_renyi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn col(header: &[String], name: &str) -> usize {
    header.iter().position(|h| h == name).unwrap()
}

#[test]
fn redundancy_single_letter_row_is_ln2() {
    let o = renyi(&["redundancy", "--n", "1", "--lambda", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let r = rows(&stdout(&o));
    let (lo, up) = (col(&r[0], "lower"), col(&r[0], "upper"));
    let ln2 = std::f64::consts::LN_2;
    assert!((r[1][lo].parse::<f64>().unwrap() - ln2).abs() < 1e-6);
    assert!((r[1][up].parse::<f64>().unwrap() - ln2).abs() < 1e-6);
    assert_eq!(r[1][col(&r[0], "certified")], "true");
}

#[test]
fn redundancy_output_is_byte_identical_across_runs() {
    let args = [
        "redundancy",
        "--n",
        "3,1,2",
        "--lambda",
        "2,0.5",
        "--grid",
        "201",
    ];
    let a = renyi(&args);
    let b = renyi(&args);
    assert_eq!(a.stdout, b.stdout);
    let r = rows(&stdout(&a));
    let order: Vec<(&str, &str)> = r[1..]
        .iter()
        .map(|x| (x[0].as_str(), x[1].as_str()))
        .collect();
    assert_eq!(
        order,
        vec![
            ("3", "2"),
            ("3", "0.5"),
            ("1", "2"),
            ("1", "0.5"),
            ("2", "2"),
            ("2", "0.5")
        ]
    );
}

#[test]
fn bits_are_nats_over_ln2() {
    let nats = rows(&stdout(&renyi(&[
        "redundancy",
        "--n",
        "2",
        "--grid",
        "101",
    ])));
    let bits = rows(&stdout(&renyi(&[
        "redundancy",
        "--n",
        "2",
        "--grid",
        "101",
        "--log-base",
        "bits",
    ])));
    let i = col(&nats[0], "lower");
    let (a, b): (f64, f64) = (nats[1][i].parse().unwrap(), bits[1][i].parse().unwrap());
    assert!((a / std::f64::consts::LN_2 - b).abs() < 1e-10);
}

#[test]
fn zchannel_matches_closed_forms() {
    let o = renyi(&["zchannel", "--lambda", "1,2"]);
    assert_eq!(o.status.code(), Some(0));
    let r = rows(&stdout(&o));
    let v = col(&r[0], "value_solver");
    let p = col(&r[0], "prior_solver");
    let d = col(&r[0], "abs_diff");
    assert!((r[1][v].parse::<f64>().unwrap() - (4.0f64 / 3.0).ln()).abs() <= 1e-6);
    assert!((r[1][p].parse::<f64>().unwrap() - 1.0 / 3.0).abs() <= 1e-6);
    assert!(r[2][d].parse::<f64>().unwrap() <= 1e-6);
}

#[test]
fn zchannel_small_order_nears_shannon_capacity() {
    let r = rows(&stdout(&renyi(&["zchannel", "--lambda", "0.0001"])));
    let v: f64 = r[1][col(&r[0], "value_solver")].parse().unwrap();
    assert!((v - 1.25f64.ln()).abs() < 1e-4);
}

#[test]
fn endpoints_sandwich_and_known_values() {
    let o = renyi(&[
        "endpoints",
        "--n",
        "1,2",
        "--lambda",
        "0.5,1",
        "--grid",
        "401",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r = rows(&stdout(&o));
    let ln2 = std::f64::consts::LN_2;
    let (r0, sh) = (col(&r[0], "r0"), col(&r[0], "shtarkov"));
    assert!((r[1][r0].parse::<f64>().unwrap() - ln2).abs() < 1e-6);
    assert!((r[1][sh].parse::<f64>().unwrap() - ln2).abs() < 1e-12);
    assert!((r[3][sh].parse::<f64>().unwrap() - 2.5f64.ln()).abs() < 1e-11);
    assert!(r[1..].iter().all(|x| x[col(&r[0], "ordered")] == "true"));
}

#[test]
fn mixture_dump_json_has_schema_version() {
    let o = renyi(&["mixture-dump", "--n", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    let p: f64 = rows
        .iter()
        .map(|r| r["log_prob"].as_f64().unwrap().exp())
        .zip([1.0, 2.0, 1.0])
        .map(|(p, m)| p * m)
        .sum();
    assert!((p - 1.0).abs() < 1e-11);
}

#[test]
fn modified_mixture_dump_is_normalized() {
    let o = renyi(&["mixture-dump", "--kind", "modified", "--n", "16"]);
    let r = rows(&stdout(&o));
    let lp = col(&r[0], "log_prob");
    let total: f64 = r[1..]
        .iter()
        .map(|x| {
            let t1: u32 = x[1].parse().unwrap();
            let ln_binom: f64 = (1..=16u32).map(|i| (i as f64).ln()).sum::<f64>()
                - (1..=t1).map(|i| (i as f64).ln()).sum::<f64>()
                - (1..=16 - t1).map(|i| (i as f64).ln()).sum::<f64>();
            (ln_binom + x[lp].parse::<f64>().unwrap()).exp()
        })
        .sum();
    assert!((total - 1.0).abs() < 1e-10);
}

#[test]
fn config_file_is_read_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.json");
    let json_out = dir.path().join("out.json");
    std::fs::write(
        &cfg,
        format!(
            r#"{{"ns": [1], "lambdas": [0.5], "grid_resolution": 51, "json_out": {:?}}}"#,
            json_out.to_str().unwrap()
        ),
    )
    .unwrap();
    let o = renyi(&[
        "redundancy",
        "--config",
        cfg.to_str().unwrap(),
        "--lambda",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_out).unwrap()).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["rows"][0]["lambda"], 2.0);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(renyi(&["redundancy", "--c", "0.9"]).status.code(), Some(2));
    assert_eq!(
        renyi(&["redundancy", "--lambda", "-1"]).status.code(),
        Some(2)
    );
    assert_eq!(renyi(&["nonsense"]).status.code(), Some(2));
    assert_eq!(
        renyi(&["redundancy", "--config", "/nonexistent/x.json"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        renyi(&["audit", "--inject-fault", "c9=1"]).status.code(),
        Some(2)
    );
}

#[test]
fn uncertified_brackets_exit_one() {
    let o = renyi(&[
        "redundancy",
        "--n",
        "4",
        "--max-iter",
        "1",
        "--gap-threshold",
        "1e-9",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn audit_passes_and_report_is_stable() {
    let a = renyi(&["audit", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    let b = renyi(&["audit", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["all_satisfied"], true);
}

#[test]
fn injected_fault_is_caught_with_witness() {
    let o = renyi(&["audit", "--inject-fault", "c1=0.1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let bad: Vec<&serde_json::Value> = v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["satisfied"] == false)
        .collect();
    assert!(!bad.is_empty());
    assert!(bad
        .iter()
        .all(|r| !r["witness"].as_array().unwrap().is_empty()));
    assert!(String::from_utf8_lossy(&o.stderr).contains("witness"));
}
