//! End-to-end checks of the binary: golden output, schema stability,
//! determinism across runs, config/env precedence, and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn workspace_file(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(rel)
}

fn normlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_normlab"))
        .args(args)
        .env_remove("NORMLAB_PRECISION")
        .output()
        .expect("binary runs")
}

#[test]
fn four_roots_selection_matches_golden() {
    let input = workspace_file("testdata/four-roots.json");
    let out = normlab(&["rudin", "--input", input.to_str().unwrap()]);
    assert!(out.status.success());
    let expected = std::fs::read(workspace_file("tests/golden/four_roots.json")).unwrap();
    assert_eq!(
        out.stdout, expected,
        "selection output drifted from the golden file"
    );
    // The quarter-circle pair: ratio sqrt(2)/4.
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["subset"], serde_json::json!([0, 1]));
    assert_eq!(v["ratio"]["decimal"], "0.353553390593");
    assert_eq!(v["matches_bruteforce"], serde_json::json!(true));
}

#[test]
fn constants_report_is_schema_stable_and_deterministic() {
    let args = [
        "constants",
        "exlf3.separation",
        "chain.telescoping",
        "--seed",
        "7",
    ];
    let first = normlab(&args);
    let second = normlab(&args);
    assert!(first.status.success());
    assert_eq!(
        first.stdout, second.stdout,
        "report bytes differ across runs"
    );

    let v: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 2);
    for e in entries {
        let obj = e.as_object().unwrap();
        for key in ["claim", "paper", "computed", "stage", "status"] {
            assert!(obj.contains_key(key), "entry missing key {key}");
        }
    }
    assert_eq!(v["metadata"]["seed"], serde_json::json!(7));
    assert_eq!(entries[0]["claim"], "exlf3.separation");
    assert_eq!(entries[0]["status"], "exact");
    assert_eq!(entries[0]["computed"]["decimal"], "4.000000000000");
}

#[test]
fn constants_csv_has_one_row_per_claim() {
    let out = normlab(&["constants", "chain.witness-x", "chain.witness-z", "--csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "claim,paper,computed,stage,status");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("chain.witness-x,n+1,5.000000000000,4,exact"));
}

#[test]
fn precision_precedence_flag_over_env() {
    let input = workspace_file("testdata/four-roots.json");
    let from_env = Command::new(env!("CARGO_BIN_EXE_normlab"))
        .args(["rudin", "--input", input.to_str().unwrap()])
        .env("NORMLAB_PRECISION", "4")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&from_env.stdout).unwrap();
    assert_eq!(v["ratio"]["decimal"], "0.3535");

    let flag_wins = Command::new(env!("CARGO_BIN_EXE_normlab"))
        .args([
            "rudin",
            "--input",
            input.to_str().unwrap(),
            "--precision",
            "6",
        ])
        .env("NORMLAB_PRECISION", "4")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&flag_wins.stdout).unwrap();
    assert_eq!(v["ratio"]["decimal"], "0.353553");
}

#[test]
fn config_file_sits_between_flags_and_env() {
    let dir = std::env::temp_dir().join(format!("normlab-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let config = dir.join("lab.conf");
    std::fs::write(&config, "# comment\nprecision = 5\n").unwrap();
    let input = workspace_file("testdata/four-roots.json");
    let out = Command::new(env!("CARGO_BIN_EXE_normlab"))
        .args([
            "rudin",
            "--input",
            input.to_str().unwrap(),
            "--config",
            config.to_str().unwrap(),
        ])
        .env("NORMLAB_PRECISION", "3")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(
        v["ratio"]["decimal"], "0.35355",
        "config must override the environment"
    );
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn invalid_metric_reports_the_offending_triple() {
    let dir = std::env::temp_dir().join(format!("normlab-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let space = dir.join("bad-space.json");
    std::fs::write(
        &space,
        r#"{
  "labels": ["a", "b", "c"],
  "matrix": [
    [{"num":0,"den":1},{"num":1,"den":1},{"num":5,"den":1}],
    [{"num":1,"den":1},{"num":0,"den":1},{"num":1,"den":1}],
    [{"num":5,"den":1},{"num":1,"den":1},{"num":0,"den":1}]
  ],
  "base": 0
}"#,
    )
    .unwrap();
    let vec_file = dir.join("v.json");
    std::fs::write(&vec_file, r#"{"b": {"num": 1, "den": 1}}"#).unwrap();
    let out = normlab(&[
        "free-norm",
        "--space",
        space.to_str().unwrap(),
        "--vector",
        vec_file.to_str().unwrap(),
    ]);
    assert!(!out.status.success(), "invalid metric must fail");
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(
        stderr.contains("triangle inequality"),
        "stderr should name the violation: {stderr}"
    );
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn free_norm_methods_agree_on_exlf() {
    let vector = workspace_file("testdata/pair-vector.json");
    let out = normlab(&[
        "free-norm",
        "--example",
        "exlf",
        "--n",
        "3",
        "--vector",
        vector.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["agree"], serde_json::json!(true));
    let methods = v["methods"].as_array().unwrap();
    assert_eq!(methods.len(), 3);
    for m in methods {
        assert_eq!(m["value"]["num"], serde_json::json!(2));
        assert_eq!(m["value"]["den"], serde_json::json!(1));
    }
}

#[test]
fn zero_one_conventions_differ_by_the_slack_point() {
    let dir = std::env::temp_dir().join(format!("normlab-zo-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let vec_file = dir.join("ones.json");
    std::fs::write(
        &vec_file,
        r#"{ "1": {"num": 1, "den": 1}, "-1": {"num": 1, "den": 1} }"#,
    )
    .unwrap();
    let value_of = |example: &str| -> serde_json::Value {
        let out = normlab(&[
            "free-norm",
            "--example",
            example,
            "--n",
            "1",
            "--vector",
            vec_file.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["agree"], serde_json::json!(true));
        v["methods"][0]["value"]["num"].clone()
    };
    // Same vector, two registered conventions: the plain 0-1 space charges
    // full distance per atom, the slack extension half.
    assert_eq!(value_of("zero-one"), serde_json::json!(2));
    assert_eq!(value_of("zero-one-star"), serde_json::json!(1));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn certify_small_instances_pass() {
    let out = normlab(&["certify", "exlf3", "--n", "4"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["ok"], serde_json::json!(true));
    assert_eq!(v["lp1_max"]["num"], serde_json::json!(1));

    let out = normlab(&["certify", "exlf", "--n", "3", "--eps", "0.25"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["ok"], serde_json::json!(true));
    assert_eq!(v["lp2_max"]["num"], serde_json::json!(3));
    assert_eq!(v["lp2_max"]["den"], serde_json::json!(4));
}

#[test]
fn staged_and_quantities_commands_run() {
    let out = normlab(&["staged", "--tag", "cantor-dcj-upper", "--max", "6"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["direction"], "decreasing");
    assert_eq!(v["monotone_ok"], serde_json::json!(true));
    assert_eq!(v["rows"].as_array().unwrap().len(), 6);
    // Below the calibrated stage the target verdict is suppressed.
    assert_eq!(v["target_ok"], serde_json::Value::Null);

    let out = normlab(&["staged", "--tag", "cantor-dcj-upper", "--max", "16"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["target_ok"], serde_json::json!(true));

    let out = normlab(&["quantities", "--family", "l1-basis", "--stage", "4"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["separation"]["decimal"], "2.000000000000");
    assert_eq!(v["real_lower"]["decimal"], "1.000000000000");
    assert_eq!(v["equivalence"], "1.000000000000");
    assert_eq!(v["stage_inequality_holds"], serde_json::json!(true));

    let out = normlab(&["quantities", "--family", "e1-ie1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["complex_upper"]["decimal"], "0.000000000000");
    assert_eq!(v["real_lower"]["decimal"], "0.707106781186");
}

#[test]
fn rudin_random_agrees_with_bruteforce() {
    let out = normlab(&["rudin", "--random", "10", "--seed", "7"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["matches_bruteforce"], serde_json::json!(true));
    // Deterministic for a fixed seed.
    let again = normlab(&["rudin", "--random", "10", "--seed", "7"]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn rudin_witness_converges() {
    let out = normlab(&["rudin", "--witness", "64"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["strictly_decreasing"], serde_json::json!(true));
    assert_eq!(v["within_tolerance"], serde_json::json!(true));
    assert_eq!(v["target"]["decimal"], "0.318309886183");
}
