use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadrisig")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr_json(out: &Output) -> Value {
    let text = String::from_utf8(out.stderr.clone()).unwrap();
    assert_eq!(text.lines().count(), 1, "stderr should be one line: {text:?}");
    serde_json::from_str(text.trim()).unwrap()
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"));
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn examples_match_golden_files() {
    for name in ["phi623", "phi211", "t24"] {
        let out = run(&["example", name]);
        assert!(out.status.success());
        assert_eq!(stdout(&out), golden(name), "{name}");
    }
}

#[test]
fn expand_six_two_three() {
    let out = run(&["expand", "6", "2", "3", "--form", "u2"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let terms: Vec<(u64, u64, u64, String, i64)> = v["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| {
            (
                t["r"].as_u64().unwrap(),
                t["s"].as_u64().unwrap(),
                t["l"].as_u64().unwrap(),
                t["coeff"].as_str().unwrap().to_string(),
                t["sign"].as_i64().unwrap(),
            )
        })
        .collect();
    let want = [
        (0, 2, 1, "3", 1),
        (3, 0, 1, "2", 1),
        (0, 4, 2, "-3", -1),
        (3, 2, 2, "6", 1),
        (6, 0, 2, "-1", -1),
        (0, 6, 3, "1", 1),
    ];
    let want: Vec<_> = want.iter().map(|&(r, s, l, c, g)| (r, s, l, c.to_string(), g)).collect();
    assert_eq!(terms, want);
}

#[test]
fn backends_print_identical_output() {
    let a = run(&["expand", "20", "3", "7", "--form", "u11", "--backend", "reference"]);
    let b = run(&["expand", "20", "3", "7", "--form", "u11", "--backend", "modular"]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn signature_of_the_order_two_group() {
    let out = run(&["signature", "2", "1", "1", "--form", "u11"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "{\"n_plus\":2,\"n_minus\":1,\"ratio\":\"2/3\"}\n");
}

#[test]
fn witness_reports_cycle_data() {
    let out = run(&["witness", "6", "2", "3", "6", "0"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["cycles"], "(1 3 5)(2 4 6)");
    assert_eq!(v["k"], 2);
    assert_eq!(v["sign"], 1);
    assert_eq!(v["one_line"], serde_json::json!([3, 4, 5, 6, 1, 2]));
}

#[test]
fn witness_outside_support_exits_two() {
    let out = run(&["witness", "6", "2", "3", "1", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "not_in_support");
    assert!(out.stdout.is_empty());
}

#[test]
fn parameter_and_usage_errors_exit_two() {
    for args in [
        vec!["expand", "6", "2", "4"],
        vec!["expand", "6", "2"],
        vec!["frobnicate"],
        vec!["signature", "5", "1", "2", "--form", "u3"],
        vec!["sweep", "--q1", "1", "--q2", "2", "--p-min", "9", "--p-max", "3"],
        vec!["sweep", "--q1", "2", "--q2", "4", "--p-min", "5", "--p-max", "9"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = stderr_json(&out);
        assert!(err["error"].is_string() && err["message"].is_string(), "{args:?}");
    }
}

#[test]
fn size_guards_need_force() {
    let out = run(&["expand", "65", "1", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "size_guard");
    let out = run(&["--force", "expand", "65", "1", "2"]);
    assert!(out.status.success());

    let out = run(&["sweep", "--q1", "1", "--q2", "2", "--p-min", "10000001", "--p-max", "10000001"]);
    assert_eq!(stderr_json(&out)["error"], "size_guard");
}

#[test]
fn sweep_csv_is_deterministic_across_thread_counts() {
    let args = ["sweep", "--q1", "2", "--q2", "3", "--form", "u11", "--p-min", "100", "--p-max", "400", "--p-step", "7"];
    let one = run(&[&["--threads", "1"][..], &args[..]].concat());
    let four = run(&[&["--threads", "4"][..], &args[..]].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    let text = stdout(&one);
    assert!(!text.contains('\r'));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("p,q1,q2,form,n_plus,n_minus,ratio,limit,abs_err,ratio_float"));
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[0], "100");
    assert_eq!(first[7], "2/3"); // even p
    let second: Vec<&str> = text.lines().nth(2).unwrap().split(',').collect();
    assert_eq!(second[7], "1/3"); // odd p
}

#[test]
fn sweep_skips_unfaithful_orders_with_notice() {
    let out = run(&["sweep", "--q1", "2", "--q2", "3", "--p-min", "3", "--p-max", "7", "--format", "json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let ps: Vec<u64> = v["rows"].as_array().unwrap().iter().map(|r| r["p"].as_u64().unwrap()).collect();
    assert_eq!(ps, vec![4, 5, 6, 7]);
    let notice: Value = serde_json::from_str(String::from_utf8(out.stderr).unwrap().trim()).unwrap();
    assert_eq!(notice["p"], 3);
}

#[test]
fn verify_small_passes_and_writes_output_file() {
    let dir = std::env::temp_dir().join(format!("quadrisig-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = run(&["verify", "--p-max", "6", "--format", "json", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["failures"] == 0));
    assert!(v["notes"].as_array().unwrap().len() >= 2);
    std::fs::remove_dir_all(&dir).unwrap();
}
