//! End-to-end tests of the binary: output formats, determinism across
//! reruns, and the documented exit codes (0 success, 1 I/O, 2 parse,
//! 3 unsupported request).

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_extropy"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_with_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_extropy"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

fn scratch_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("extropy-cli-{}-{name}", std::process::id()));
    fs::write(&path, contents).expect("scratch file writable");
    path
}

#[test]
fn measure_reports_both_routes_and_their_discrepancy() {
    let out = run(&[
        "measure",
        "--dist",
        "uniform:0,1",
        "--kind",
        "wcpj",
        "--m",
        "1",
        "--method",
        "both",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("closed: -0.125"));
    let quadrature: f64 = lines
        .next()
        .and_then(|l| l.strip_prefix("quadrature: "))
        .and_then(|v| v.parse().ok())
        .expect("quadrature line");
    assert!((quadrature + 0.125).abs() < 1e-8);
    let discrepancy: f64 = lines
        .next()
        .and_then(|l| l.strip_prefix("discrepancy: "))
        .and_then(|v| v.parse().ok())
        .expect("discrepancy line");
    assert!(discrepancy < 1e-8);
}

#[test]
fn measure_evaluates_order_max_and_partial_variants() {
    let out = run(&[
        "measure",
        "--dist",
        "powerlaw:2",
        "--kind",
        "order-max",
        "--n",
        "2",
        "--m",
        "1",
        "--method",
        "closed",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "-0.05");

    let out = run(&[
        "measure",
        "--dist",
        "uniform:0,1",
        "--kind",
        "phi-p",
        "--p",
        "0.5",
        "--m",
        "1",
        "--method",
        "closed",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "-0.0078125");
}

#[test]
fn measure_defaults_to_quadrature_for_distributions_without_closed_forms() {
    let out = run(&[
        "measure",
        "--dist",
        "beta:1.5,1.5",
        "--kind",
        "wcpj",
        "--m",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let value: f64 = stdout(&out).trim().parse().expect("numeric output");
    assert!(value < 0.0);
}

#[test]
fn exit_codes_follow_the_error_contract() {
    let bad_spec = run(&["measure", "--dist", "uniform:1", "--kind", "cpj"]);
    assert_eq!(bad_spec.status.code(), Some(2));
    assert!(stderr(&bad_spec).contains("error:"));

    let no_closed_form = run(&[
        "measure", "--dist", "beta:2,3", "--kind", "cpj", "--method", "closed",
    ]);
    assert_eq!(no_closed_form.status.code(), Some(3));

    let missing_n = run(&["measure", "--dist", "uniform:0,1", "--kind", "order-max"]);
    assert_eq!(missing_n.status.code(), Some(2));

    let unknown_kind = run(&["measure", "--dist", "uniform:0,1", "--kind", "entropy"]);
    assert_eq!(unknown_kind.status.code(), Some(2));

    let missing_file = run(&["measure-sample", "--input", "/nonexistent/sample.txt"]);
    assert_eq!(missing_file.status.code(), Some(1));

    let bad_threads = run_with_env(
        &["measure", "--dist", "uniform:0,1", "--kind", "cpj"],
        "EXTROPY_THREADS",
        "many",
    );
    assert_eq!(bad_threads.status.code(), Some(2));
}

#[test]
fn measure_sample_evaluates_the_estimator() {
    let path = scratch_file("hand.txt", "# five draws\n0.2\n0.4\n0.6\n0.8\n1.0\n");
    let out = run(&[
        "measure-sample",
        "--input",
        path.to_str().unwrap(),
        "--m",
        "1",
    ]);
    fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(0));
    let value: f64 = stdout(&out).trim().parse().expect("numeric output");
    assert!((value + 0.092).abs() < 1e-12);

    let garbled = scratch_file("garbled.txt", "0.2\nnot-a-number\n");
    let out = run(&["measure-sample", "--input", garbled.to_str().unwrap()]);
    fs::remove_file(&garbled).ok();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn critical_values_emit_deterministic_csv() {
    let args = [
        "critical-values",
        "--n",
        "20,30",
        "--m",
        "1",
        "--alpha",
        "0.05",
        "--reps",
        "2000",
        "--seed",
        "9",
    ];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0));
    let text = stdout(&first);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0], "n,m,alpha,reps,seed,g1,g2");
    assert!(lines[1].starts_with("20,1,0.05,2000,9,"));
    assert!(lines[2].starts_with("30,1,0.05,2000,9,"));

    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);

    let capped = run_with_env(&args, "EXTROPY_THREADS", "2");
    assert_eq!(first.stdout, capped.stdout);

    let out_path = std::env::temp_dir().join(format!("extropy-table-{}.csv", std::process::id()));
    let mut file_args = args.to_vec();
    let out_str = out_path.to_str().unwrap().to_string();
    file_args.extend_from_slice(&["--out", &out_str]);
    let written = run(&file_args);
    assert_eq!(written.status.code(), Some(0));
    let contents = fs::read_to_string(&out_path).expect("table written");
    fs::remove_file(&out_path).ok();
    assert_eq!(contents, text);
}

#[test]
fn uniformity_test_reports_json_with_generated_table() {
    let draws: String = (0..20)
        .map(|i| format!("{}\n", (i as f64 + 0.5) / 20.0))
        .collect();
    let path = scratch_file("spread.txt", &draws);
    let out = run(&[
        "test-uniformity",
        "--input",
        path.to_str().unwrap(),
        "--m",
        "1",
        "--reps",
        "2000",
        "--seed",
        "9",
    ]);
    fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["n"], 20);
    assert_eq!(report["m"], 1);
    assert_eq!(report["table_source"], "generated");
    assert_eq!(report["reject"], false);
    assert_eq!(report["support_violation"], false);
    assert_eq!(report["n_mismatch"], false);
    assert!(report["statistic"].as_f64().unwrap() < 0.0);
    assert!(report["g1"].as_f64().unwrap() < report["g2"].as_f64().unwrap());
}

#[test]
fn uniformity_test_reuses_tables_and_flags_anomalies() {
    let table_path = std::env::temp_dir().join(format!("extropy-reuse-{}.csv", std::process::id()));
    let table_str = table_path.to_str().unwrap().to_string();
    let generated = run(&[
        "critical-values",
        "--n",
        "25",
        "--m",
        "1",
        "--reps",
        "2000",
        "--seed",
        "9",
        "--out",
        &table_str,
    ]);
    assert_eq!(generated.status.code(), Some(0));

    let draws: String = (0..20)
        .map(|i| format!("{}\n", (i as f64 + 0.5) / 20.0))
        .collect();
    let sample = scratch_file("mismatch.txt", &draws);
    let out = run(&[
        "test-uniformity",
        "--input",
        sample.to_str().unwrap(),
        "--table",
        &table_str,
    ]);
    fs::remove_file(&sample).ok();
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(report["n_mismatch"], true);
    assert_eq!(report["table_source"], table_str.as_str());

    let constant = scratch_file("constant.txt", &"0.5\n".repeat(20));
    let out = run(&[
        "test-uniformity",
        "--input",
        constant.to_str().unwrap(),
        "--table",
        &table_str,
    ]);
    fs::remove_file(&constant).ok();
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(report["statistic"], 0.0);
    assert_eq!(report["reject"], true);
    assert_eq!(report["support_violation"], false);

    let escaped = scratch_file("escaped.txt", "0.2\n0.4\n0.6\n0.8\n1.5\n");
    let out = run(&[
        "test-uniformity",
        "--input",
        escaped.to_str().unwrap(),
        "--table",
        &table_str,
    ]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(report["reject"], true);
    assert_eq!(report["support_violation"], true);

    let no_matching_row = run(&[
        "test-uniformity",
        "--input",
        escaped.to_str().unwrap(),
        "--table",
        &table_str,
        "--m",
        "3",
    ]);
    assert_eq!(no_matching_row.status.code(), Some(3));

    fs::remove_file(&escaped).ok();
    fs::remove_file(&table_path).ok();
}

#[test]
fn power_emits_rows_and_rejects_wide_alternatives() {
    let args = [
        "power",
        "--alt",
        "beta:1.5,1.5",
        "--n",
        "20",
        "--m",
        "1",
        "--reps",
        "2000",
        "--seed",
        "9",
    ];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0));
    let text = stdout(&first);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], "alt,n,m,alpha,reps,seed,power");
    assert!(lines[1].starts_with("beta:1.5,1.5,20,1,0.05,2000,9,"));
    let estimate: f64 = lines[1].rsplit(',').next().unwrap().parse().unwrap();
    assert!((0.0..=1.0).contains(&estimate));

    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);

    let wide = run(&[
        "power",
        "--alt",
        "uniform:0,2",
        "--n",
        "20",
        "--reps",
        "2000",
    ]);
    assert_eq!(wide.status.code(), Some(3));
}

#[test]
fn verify_properties_passes_and_lists_every_check() {
    let out = run(&["verify-properties"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("PASS quantile_cdf_roundtrip"));
    assert!(text.contains("PASS size_matches_alpha"));
    assert!(!text.contains("FAIL"));
    assert!(text.contains("all 32 checks passed"));
}
