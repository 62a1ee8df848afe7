use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn qdgas(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdgas"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn solve(file: &str, extra: &[&str]) -> (Output, serde_json::Value, String) {
    let dir = tempfile::tempdir().unwrap();
    let problem = data(file);
    let mut args = vec![
        "solve",
        problem.to_str().unwrap(),
        "--out-dir",
        dir.path().to_str().unwrap(),
    ];
    args.extend_from_slice(extra);
    let out = qdgas(&args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let trace = std::fs::read_to_string(dir.path().join("trace.json")).unwrap();
    let csv = std::fs::read_to_string(dir.path().join("histograms.csv")).unwrap();
    (out, serde_json::from_str(&trace).unwrap(), csv)
}

#[test]
fn portfolio_seed_7_reaches_minus_six() {
    let (out, trace, _) = solve("portfolio.json", &["--seed", "7"]);
    assert_eq!(trace["best_value"], -6);
    assert_eq!(trace["best_key"], 0b101);
    assert!(String::from_utf8_lossy(&out.stdout).contains("x0=1;x1=0;x2=1"));
}

#[test]
fn constrained_portfolio_seed_7_reaches_minus_three() {
    let (_, trace, _) = solve("portfolio_hamming.json", &["--seed", "7"]);
    assert_eq!(trace["best_value"], -3);
    assert_eq!(trace["best_key"], 0b100);
}

#[test]
fn ry_encoder_and_flag_qubit_give_the_same_answer() {
    let (_, trace, _) = solve(
        "portfolio_hamming.json",
        &[
            "--seed",
            "7",
            "--encoder",
            "ry",
            "--global-flag",
            "--patience",
            "10",
        ],
    );
    assert_eq!(trace["best_value"], -3);
}

#[test]
fn histograms_sum_to_one_per_iteration() {
    let (_, trace, csv) = solve("two_var.json", &["--seed", "1", "--lambda", "1.5"]);
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "iteration,threshold,basis_state,key_bits,decoded_value,probability,assignment"
    );
    let mut totals = std::collections::BTreeMap::new();
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        *totals
            .entry(cols[0].parse::<usize>().unwrap())
            .or_insert(0.0) += cols[5].parse::<f64>().unwrap();
    }
    assert_eq!(totals.len(), trace["iterations"].as_array().unwrap().len());
    for total in totals.values() {
        assert!((total - 1.0).abs() < 1e-6);
    }
}

#[test]
fn malformed_file_exits_2_naming_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"variables": ["a"], "objective": [{"vars": ["b"], "coeff": 1}]}"#,
    )
    .unwrap();
    let out = qdgas(&[
        "solve",
        path.to_str().unwrap(),
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("objective[0].vars[0]"));
}

#[test]
fn narrow_register_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let problem = data("portfolio.json");
    let out = qdgas(&[
        "solve",
        problem.to_str().unwrap(),
        "--value-qubits",
        "2",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn infeasible_problem_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("infeasible.json");
    std::fs::write(
        &path,
        r#"{"variables": ["a"], "objective": [{"vars": ["a"], "coeff": 1}],
            "constraints": [{"terms": [{"vars": [], "coeff": 1}], "relation": "<0"}]}"#,
    )
    .unwrap();
    let out = qdgas(&[
        "solve",
        path.to_str().unwrap(),
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(4));
    let out = qdgas(&["brute", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn brute_reports_minima() {
    for (file, expected) in [
        ("portfolio.json", "minimum -6\n101 x0=1;x1=0;x2=1\n"),
        ("portfolio_hamming.json", "minimum -3\n001 x0=0;x1=0;x2=1\n"),
        ("two_var.json", "minimum -2\n00 x0=0;x1=0\n"),
        ("portfolio_qubo.json", "minimum -6\n101 x0=1;x1=0;x2=1\n"),
    ] {
        let out = qdgas(&["brute", data(file).to_str().unwrap()]);
        assert_eq!(String::from_utf8_lossy(&out.stdout), expected, "{file}");
    }
}

#[test]
fn resources_table() {
    let out = qdgas(&[
        "resources",
        data("portfolio.json").to_str().unwrap(),
        "--value-qubits",
        "4",
    ]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success());
    assert!(text.contains("n = 3, m = 4"));
    for row in [
        "H                         4",
        "1-controlled R           12",
        "2-controlled R            8",
        "Inverse QFT               1",
    ] {
        assert!(text.contains(row), "missing {row:?} in\n{text}");
    }
}

#[test]
fn fejer_csv() {
    let out = qdgas(&["fejer", "2.5", "4"]);
    let text = String::from_utf8_lossy(&out.stdout);
    let probs: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(probs.len(), 16);
    assert!((probs[2] - probs[3]).abs() < 1e-12);
    assert!(probs[2] + probs[3] >= 0.81);

    let out = qdgas(&["fejer", "-3", "3"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("\n5,1.000000000000\n"));
}

#[test]
fn bad_lambda_is_a_usage_error() {
    let out = qdgas(&[
        "solve",
        data("two_var.json").to_str().unwrap(),
        "--lambda",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}
