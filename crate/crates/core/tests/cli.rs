use std::path::Path;
use std::process::{Command, Output};

use qsrg_core::gamma::build_gamma;
use qsrg_core::graph::Graph;
use qsrg_core::group::{catalog_group, parse_table_file, subgroup_generate, GroupSpec};
use serde_json::Value;

fn qsrg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsrg")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn analyze_cyclic_six() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z6.json");
    let out = qsrg(&["analyze", "--group", "cyclic:6", "--subgroup", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("c-set {2, 4, 6}"), "{stdout}");
    assert!(stdout.contains("overall PASS"));

    let report = read_json(&path);
    assert_eq!(report["overall"], "PASS");
    assert_eq!(report["group_label"], "Z6");
    assert_eq!(report["subgroup_members"], serde_json::json!([0, 3]));
    assert_eq!(report["parameters"]["prediction"]["case_tag"], "normal_h2");
    assert_eq!(report["parameters"]["profile"]["c_values"], serde_json::json!([2, 4, 6]));
    assert_eq!(report["symmetry"]["generated_order"], 432);
    assert_eq!(report["symmetry"]["bruteforce_order"], 432);
    assert!(report.get("timing").is_none());
    for key in [
        "group_label",
        "group_order",
        "subgroup_members",
        "subgroup_order",
        "index",
        "is_normal",
        "parameters",
        "classification",
        "symmetry",
        "transitivity",
        "overall",
        "failures",
        "notes",
    ] {
        assert!(report.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn analyze_symmetric_transposition() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s3.json");
    let out = qsrg(&["analyze", "--group", "symmetric:3", "--subgroup", "(12)", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let report = read_json(&path);
    assert_eq!(report["is_normal"], false);
    assert_eq!(report["parameters"]["prediction"]["case_tag"], "nonnormal_h2");
    assert_eq!(report["symmetry"]["predicted_full_order"], 144);
    assert_eq!(report["symmetry"]["generated_order"], 144);
    assert_eq!(report["transitivity"]["corollary"]["verdict"], "not_applicable");
}

#[test]
fn small_groups_are_degenerate_without_override() {
    let out = qsrg(&["analyze", "--group", "cyclic:4", "--subgroup", "2"]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8(out.stdout).unwrap().contains("DEGENERATE"));
    let out = qsrg(&["analyze", "--group", "cyclic:4", "--subgroup", "2", "--allow-small"]);
    assert!(matches!(code(&out), 0 | 1));
}

#[test]
fn whole_group_is_degenerate() {
    let out = qsrg(&["analyze", "--group", "cyclic:5", "--subgroup", "1"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(code(&qsrg(&["analyze", "--group", "nonsense:3"])), 2);
    assert_eq!(code(&qsrg(&["analyze", "--group", "cyclic:6", "--subgroup", "9"])), 2);
    assert_eq!(code(&qsrg(&["analyze", "--group", "cyclic:6", "--subgroup", "(12)"])), 2);
    assert_eq!(code(&qsrg(&["analyze"])), 2);
    assert_eq!(code(&qsrg(&["sweep", "--max-order", "40"])), 2);
}

#[test]
fn forced_search_beyond_bound_exits_three() {
    let out = qsrg(&["analyze", "--group", "cyclic:11", "--subgroup", "", "--force-bruteforce-aut"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = qsrg(&["analyze", "--group", "dihedral:8", "--subgroup", "4", "--out", p.to_str().unwrap()]);
        assert_eq!(code(&out), 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn timing_only_on_request() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let out = qsrg(&["analyze", "--group", "cyclic:6", "--subgroup", "2", "--timing", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let report = read_json(&path);
    for key in ["build_ms", "profile_ms", "aut_ms"] {
        assert!(report["timing"][key].is_number());
    }
}

#[test]
fn sweep_to_order_eight() {
    let dir = tempfile::tempdir().unwrap();
    let one = dir.path().join("one.json");
    let three = dir.path().join("three.json");
    let out = qsrg(&["sweep", "--max-order", "8", "--out", one.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("0 FAIL"), "{stdout}");
    let out = qsrg(&["sweep", "--max-order", "8", "--workers", "3", "--out", three.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(std::fs::read(&one).unwrap(), std::fs::read(&three).unwrap());

    let report = read_json(&one);
    assert_eq!(report["summary"]["fail"], 0);
    assert_eq!(report["summary"]["instances"], report["reports"].as_array().unwrap().len());
    // every edge-transitive instance listed has an elementary abelian quotient
    for r in report["reports"].as_array().unwrap() {
        if r["transitivity"]["edge_orbits"] == true {
            assert_eq!(r["symmetry"]["elementary_abelian_quotient"], true);
        }
    }
}

#[test]
fn sweep_below_floor_is_empty() {
    let out = qsrg(&["sweep", "--max-order", "4"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8(out.stdout).unwrap().contains("0 instances"));
}

#[test]
fn sweep_to_twelve_without_search() {
    let out = qsrg(&["sweep", "--max-order", "12", "--skip-bruteforce-aut", "--workers", "2"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn export_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("z6");
    let out = qsrg(&["export", "--group", "cyclic:6", "--subgroup", "3", "--out", prefix.to_str().unwrap()]);
    assert_eq!(code(&out), 0);

    let edges = std::fs::read_to_string(dir.path().join("z6.edges")).unwrap();
    let mut lines = edges.lines();
    assert_eq!(lines.next(), Some("vertices 36"));
    assert_eq!(lines.count(), 216);

    let g = catalog_group(&GroupSpec::Cyclic(6)).unwrap();
    let h = subgroup_generate(&g, &[3]).unwrap();
    let graph = Graph::read_edge_list(&dir.path().join("z6.edges")).unwrap();
    assert_eq!(&graph, build_gamma(&g, &h, false).unwrap().graph());
    let table = parse_table_file(&dir.path().join("z6.table")).unwrap();
    assert_eq!(table.rows(), g.rows());
    assert_eq!(table.label(), "Z6");
}

#[test]
fn file_groups_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("s3");
    let out = qsrg(&["export", "--group", "symmetric:3", "--out", prefix.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let spec = format!("file:{}", dir.path().join("s3.table").display());
    let out = qsrg(&["analyze", "--group", &spec, "--subgroup", "3"]);
    assert!(matches!(code(&out), 0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn export_to_unwritable_path_exits_two() {
    let out = qsrg(&["export", "--group", "cyclic:6", "--subgroup", "3", "--out", "/nonexistent-dir/x"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8(out.stderr).unwrap().contains("/nonexistent-dir/x"));
}
