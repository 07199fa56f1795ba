use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn amatch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_amatch"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_out(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p.to_str().unwrap().to_string()
}

const EXAMPLE: [&str; 6] = ["-g", "Z13", "-A", "{0,1,2,7}", "-B", "{3,4,9,10}"];

#[test]
fn construct_reproduces_worked_example() {
    let mut args = vec!["construct"];
    args.extend(&EXAMPLE);
    let o = amatch(&args);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("C' = {3,4,5,6,9,10,11,12}"));
    assert!(out.contains("step 1: c = 3, A_1 = {0,1,2,7}, B_1 = {3,4,9,10}, A'_1 = {0,7}; assign f0(0) = 3, f0(7) = 9"));
    assert!(out.contains("step 2: c = 4, A_2 = {1,2}, B_2 = {4,10}, A'_2 = {}; no assignments"));
    assert!(out.contains("step 3: c = 5, A_3 = {1,2}, B_3 = {4,10}, A'_3 = {1}; assign f0(1) = 4"));
    assert!(out.contains("step 8: c = 12, A_8 = {2}, B_8 = {10}, A'_8 = {2}; assign f0(2) = 10"));
    assert!(out.contains("f0 = {0↦3, 1↦4, 2↦10, 7↦9} [acyclic matching]"));
    assert!(out.contains("m = {3:2, 5:1, 12:1}"));
}

#[test]
fn construct_json_round_trips() {
    let mut args = vec!["construct", "--json"];
    args.extend(&EXAMPLE);
    let v = json_out(&amatch(&args));
    assert_eq!(v["weak_condition"], json!(true));
    assert_eq!(v["matching"]["pairs"], json!([[0, 3], [1, 4], [2, 10], [7, 9]]));
    assert_eq!(v["multiplicity"]["counts"], json!({"3": 2, "5": 1, "12": 1}));
    assert_eq!(v["trace"]["cs"], json!([3, 4, 5, 6, 9, 10, 11, 12]));
    assert_eq!(v["trace"]["steps"].as_array().unwrap().len(), 8);

    use acyclic_matching::greedy::GreedyTrace;
    use acyclic_matching::matching::SetPair;
    let g: acyclic_matching::GroupSpec = "Z13".parse().unwrap();
    let trace = GreedyTrace::from_json(&g, &v["trace"]).unwrap();
    assert_eq!(trace.to_json(&g), v["trace"]);
    let e = |x: i64| g.element(vec![x]).unwrap();
    let pair = SetPair::new([0, 1, 2, 7].map(e), [3, 4, 9, 10].map(e)).unwrap();
    trace.check_consistency(&pair, &g).unwrap();
}

#[test]
fn construct_singleton_and_descending() {
    let o = amatch(&["construct", "-g", "Z2", "-A", "{0}", "-B", "{1}"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("f0 = {0↦1} [acyclic matching]"));

    let mut args = vec!["construct", "--order", "desc", "--json"];
    args.extend(&EXAMPLE);
    let v = json_out(&amatch(&args));
    assert_eq!(v["order"], json!("desc"));
    assert_eq!(v["trace"]["cs"][0], json!(12));
}

#[test]
fn construct_outside_weak_condition_exits_2() {
    let o = amatch(&["construct", "-g", "Z4", "-A", "{0,2}", "-B", "{1,2}"]);
    assert_eq!(code(&o), 2);
    let out = stdout(&o);
    assert!(out.contains("bijection (not necessarily a matching)"));
    assert!(out.contains("intermediate"));

    let v = json_out(&amatch(&["construct", "--json", "-g", "Z4", "-A", "{0,2}", "-B", "{0,2}"]));
    assert_eq!(v["diagnosis"]["class"], json!("blocked"));
}

#[test]
fn parse_errors_exit_1() {
    assert_eq!(code(&amatch(&["construct", "-g", "Z13", "-A", "{0,13}", "-B", "{1,2}"])), 1);
    assert_eq!(code(&amatch(&["construct", "-g", "Z0", "-A", "{0}", "-B", "{1}"])), 1);
    assert_eq!(code(&amatch(&["construct", "-g", "Z5", "-A", "{0,1}", "-B", "{1}"])), 1);
}

#[test]
fn sets_and_groups_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    std::fs::write(&a, "{0,1,2,7}\n").unwrap();
    let g = dir.path().join("g.txt");
    std::fs::write(&g, "Z13").unwrap();
    let o = amatch(&[
        "construct",
        "-g",
        &format!("@{}", g.display()),
        "-A",
        &format!("@{}", a.display()),
        "-B",
        "{3,4,9,10}",
    ]);
    assert_eq!(code(&o), 0);
}

#[test]
fn verify_matching_files() {
    let dir = tempfile::tempdir().unwrap();
    let f0 = write(dir.path(), "f0.json", &json!({"pairs": [[0, 3], [1, 4], [2, 10], [7, 9]]}));
    let mut args = vec!["verify", "--matching", &f0];
    args.extend(&EXAMPLE);
    let o = amatch(&args);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("acyclic: yes"));

    // Every matching of this pair shares its multiplicity function with another.
    let z7 = ["-g", "Z7", "-A", "{0,1,3}", "-B", "{1,2,4}"];
    let mut args = vec!["enumerate", "--json"];
    args.extend(z7);
    let census = json_out(&amatch(&args));
    assert!(census["total"].as_u64().unwrap() > 0);
    assert_eq!(census["acyclic"], json!(0));
    let g = write(dir.path(), "g.json", &census["classes"][0]["matchings"][0]);
    let mut args = vec!["verify", "--json", "--matching", &g];
    args.extend(z7);
    let o = amatch(&args);
    assert_eq!(code(&o), 2);
    let v = json_out(&o);
    assert_eq!(v["is_matching"], json!(true));
    assert_eq!(v["acyclic"], json!(false));

    let bad = write(dir.path(), "bad.json", &json!({"pairs": [[0, 3], [1, 3], [2, 10], [7, 9]]}));
    let mut args = vec!["verify", "--matching", &bad];
    args.extend(&EXAMPLE);
    assert_eq!(code(&amatch(&args)), 1);
}

#[test]
fn diagnose_reports_hall_violator() {
    let v = json_out(&amatch(&["diagnose", "--json", "-g", "Z4", "-A", "{0,2}", "-B", "{1,2}"]));
    assert_eq!(v["matching"]["exists"], json!(false));
    assert_eq!(v["matching"]["hall_violator"]["deficient"], json!([0, 2]));
    assert_eq!(v["matching"]["hall_violator"]["neighbors"], json!([1]));
    assert_eq!(v["diagnosis"]["class"], json!("intermediate"));
}

#[test]
fn search_exit_codes() {
    let o = amatch(&["search", "--kind", "acyclic", "-g", "Z7", "--max-size", "6"]);
    assert_eq!(code(&o), 3);

    let o = amatch(&["search", "--kind", "weak", "-g", "Z5,Z7,Z12", "--max-size", "4", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json_out(&o);
    assert_eq!(v["verdict"], json!("property-holds"));
    assert_eq!(v["stats"]["failing_pairs"], json!(0));

    let o = amatch(&["search", "--kind", "matching", "-g", "Z4", "--max-size", "2", "--json"]);
    assert_eq!(code(&o), 3);
    let v = json_out(&o);
    assert_eq!(v["witness"]["A"], json!(["0", "2"]));
    assert_eq!(v["witness"]["B"], json!(["1", "2"]));
    let report = acyclic_matching::oracle::SearchReport::from_json(&v).unwrap();
    assert_eq!(report.to_json(), v);

    let o = amatch(&["search", "--kind", "identity", "-g", "Z13", "--max-size", "8"]);
    assert_eq!(code(&o), 0);
    let o = amatch(&["search", "--kind", "identity", "-g", "Z12"]);
    assert_eq!(code(&o), 1);
    let o = amatch(&["search", "--kind", "sidon", "-g", "Z11", "--max-size", "3"]);
    assert_eq!(code(&o), 0);
    let o = amatch(&["search", "--kind", "uniqueness", "-g", "Z6,ZxZ", "--samples", "20", "--json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json_out(&o)["scope"]["mode"], json!("mixed"));
}

#[test]
fn sidon_exit_codes() {
    assert_eq!(code(&amatch(&["sidon", "-g", "Z13", "-B", "{0,1,3,9}"])), 0);
    assert_eq!(code(&amatch(&["sidon", "-g", "Z8", "-B", "{0,4}"])), 2);
}

#[test]
fn table_operator_commands() {
    let dir = tempfile::tempdir().unwrap();
    let latin = write(
        dir.path(),
        "latin.json",
        &json!({"carrier": ["a", "b", "c"], "table": [["b", "c", "a"], ["a", "b", "c"], ["c", "a", "b"]]}),
    );
    assert_eq!(code(&amatch(&["table-check", "--strict", "--table", &latin])), 0);
    let o = amatch(&["construct", "--table", &latin, "-A", "{a}", "-B", "{a}"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = amatch(&["search", "--kind", "uniqueness", "--table", &latin, "--max-size", "3"]);
    assert_eq!(code(&o), 0);

    let broken = write(
        dir.path(),
        "broken.json",
        &json!({"carrier": ["x", "y"], "table": [["x", "x"], ["y", "x"]]}),
    );
    let v = json_out(&amatch(&["table-check", "--json", "--table", &broken]));
    assert_eq!(v["left_cancellation"], json!(false));
    assert_eq!(v["witness"], json!({"a": "x", "b1": "x", "b2": "y"}));
    assert_eq!(code(&amatch(&["table-check", "--table", &broken])), 2);

    // Left-cancellative but not Latin: rows injective, columns not.
    let skew = write(
        dir.path(),
        "skew.json",
        &json!({"carrier": ["x", "y"], "table": [["x", "y"], ["x", "y"]]}),
    );
    assert_eq!(code(&amatch(&["table-check", "--table", &skew])), 0);
    assert_eq!(code(&amatch(&["table-check", "--strict", "--table", &skew])), 2);
}
