use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn pperfect(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pperfect"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &TempDir, name: &str, contents: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, contents).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn transpose_of_two_by_four() {
    let out = pperfect(&["perm", "transpose", "--a", "2", "--b", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["images"], serde_json::json!([0, 4, 1, 5, 2, 6, 3, 7]));
    assert_eq!(v["sign"], 1);
    assert_eq!(v["cycle_type"]["lengths"], serde_json::json!([3, 3]));
}

#[test]
fn zero_dimension_is_a_usage_error() {
    let out = pperfect(&["perm", "transpose", "--a", "0", "--b", "4"]);
    assert_eq!(out.status.code(), Some(3));
    let diag: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(diag["error"], "usage");
    assert!(out.stdout.is_empty());
}

#[test]
fn help_exits_zero() {
    let out = pperfect(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("telescope"));
}

#[test]
fn missing_root_is_a_negative_result() {
    let out = pperfect(&["perm", "root", "--perm", "[1,0,2,3]", "--q", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["exists"], false);
}

#[test]
fn malformed_permutation_exits_three() {
    let out = pperfect(&["perm", "cycles", "--perm", "[0,0]"]);
    assert_eq!(out.status.code(), Some(3));
    let diag: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(diag["exit"], 3);
}

#[test]
fn symmetric_four_is_hypoabelian() {
    let v = json_of(&pperfect(&["perm", "derived", "--symmetric", "4"]));
    assert_eq!(v["derived_series"], serde_json::json!([24, 12, 4, 1]));
    assert_eq!(v["hypoabelian"], true);
}

#[test]
fn telescope_witness_at_level_two() {
    let out = pperfect(&["telescope", "abelian", "--p", "2", "--max-level", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["verdict"], "non_abelian");
    assert_eq!(v["level"], 2);
}

#[test]
fn telescope_levels_beyond_budget_exit_two() {
    let out = pperfect(&["telescope", "abelian", "--p", "2", "--max-level", "40"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unequal_colimit_elements_exit_one() {
    let out = pperfect(&[
        "telescope",
        "equal",
        "--p",
        "2",
        "--level-a",
        "1",
        "--a",
        "[1,0]",
        "--level-b",
        "2",
        "--b",
        "[1,0,2,3]",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["equal"], false);
}

#[test]
fn divisibility_csv_has_one_row_per_level() {
    let out = pperfect(&[
        "--format",
        "csv",
        "telescope",
        "divisibility",
        "--p",
        "2",
        "--level",
        "1",
        "--perm",
        "[1,0]",
        "--q",
        "2",
        "--max-level",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[1].ends_with("false,true"));
    assert!(lines[2].contains(",true,"));
}

#[test]
fn free_monoid_of_rank_two_is_not_locally_monogenic() {
    let dir = TempDir::new().unwrap();
    let n2 = write(&dir, "n2.json", r#"{"rank":2,"generators":[[1,0],[0,1]]}"#);
    let out = pperfect(&["monoid", "locmono", "--in", &n2]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json_of(&out).get("No").is_some());
}

#[test]
fn numerical_semigroup_is_locally_monogenic() {
    let dir = TempDir::new().unwrap();
    let s = write(&dir, "s.json", r#"{"rank":1,"generators":[[3],[5]]}"#);
    let out = pperfect(&["monoid", "locmono", "--in", &s]);
    assert_eq!(out.status.code(), Some(0));
    let out = pperfect(&["monoid", "pullback", "--in", &s, "--p", "2"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn group_completion_of_a_lattice() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.json", r#"{"rank":1,"generators":[[2],[3]]}"#);
    let v = json_of(&pperfect(&["monoid", "complete", "--in", &m]));
    assert_eq!(v["group"]["rank"], 1);
    assert_eq!(v["group"]["torsion"], serde_json::json!([]));
}

#[test]
fn finite_monoid_with_non_isolated_zero() {
    let dir = TempDir::new().unwrap();
    // Z/2 under addition: 1 + 1 = 0.
    let m = write(&dir, "z2.json", r#"{"size":2,"table":[[0,1],[1,0]],"zero":0}"#);
    let out = pperfect(&["monoid", "isolated", "--in", &m]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["isolated"], false);
}

#[test]
fn missing_input_file_is_an_io_error() {
    let out = pperfect(&["monoid", "complete", "--in", "/nonexistent/m.json"]);
    assert_eq!(out.status.code(), Some(3));
    let diag: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(diag["error"], "io");
}

#[test]
fn exhaustion_table_lists_every_small_group() {
    let out = pperfect(&["--format", "csv", "structure", "exhaust", "--p", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 15);
    assert!(text.contains("Z3,3,true,1,true,true,true"));
    assert!(text.contains("S3,6,false,0,false,true,true"));
}

#[test]
fn canonical_rho_needs_p_invertible() {
    let out = pperfect(&["structure", "canonical", "--group", "Z2", "--p", "2"]);
    assert_eq!(out.status.code(), Some(3));
    let diag: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(diag["error"], "not_invertible");
}

#[test]
fn canonical_rho_verifies() {
    let dir = TempDir::new().unwrap();
    let out = pperfect(&["structure", "canonical", "--group", "Z5", "--p", "2"]);
    let rho = write(&dir, "rho.json", &String::from_utf8(out.stdout).unwrap());
    let out = pperfect(&["structure", "verify", "--group", "Z5", "--rho", &rho]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["conditions_hold"], true);
    assert_eq!(v["conclusion_holds"], true);
}

#[test]
fn cyclic_homology_agrees_with_periodic_resolution() {
    let v = json_of(&pperfect(&["homology", "cyclic", "--q", "3", "--D", "4"]));
    assert_eq!(v["agree"], true);
    assert_eq!(v["bar"], serde_json::json!([1, 1, 1, 1, 1]));
}

#[test]
fn assembled_bialgebra_round_trips_through_fpbialg() {
    let dir = TempDir::new().unwrap();
    let out = pperfect(&["homology", "assemble", "--N", "3", "--D", "2", "--p", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let h = write(&dir, "h.json", &String::from_utf8(out.stdout).unwrap());
    assert_eq!(pperfect(&["fpbialg", "check", "--in", &h]).status.code(), Some(0));
    assert_eq!(pperfect(&["fpbialg", "nilpotence", "--in", &h]).status.code(), Some(0));
    let colimit = json_of(&pperfect(&["fpbialg", "colimit", "--in", &h]));
    assert_eq!(colimit["window"], 3);
}

#[test]
fn pipeline_fin_frobenius() {
    let out = pperfect(&[
        "--format",
        "text",
        "pipeline",
        "fin-frobenius",
        "--N",
        "4",
        "--D",
        "3",
        "--p",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim(),
        "dim 17, axioms true, nilpotent true, colimit dims [5, 0, 0, 0]"
    );
}

#[test]
fn window_larger_than_n_is_rejected() {
    let out = pperfect(&["pipeline", "weights", "--N", "3", "--D", "2", "--p", "2", "--W", "4"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn window_restricts_the_weights() {
    let v = json_of(&pperfect(&[
        "pipeline", "weights", "--N", "4", "--D", "2", "--p", "2", "--W", "2",
    ]));
    assert_eq!(v["window"], 2);
    assert_eq!(v["onto_window"], true);
    assert_eq!(v["distinct"], true);
}

#[test]
fn out_flag_writes_a_file() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("t.json");
    let out = pperfect(&[
        "--out",
        path.to_str().unwrap(),
        "perm",
        "transpose",
        "--a",
        "2",
        "--b",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(Path::new(&path)).unwrap()).unwrap();
    assert_eq!(v["images"], serde_json::json!([0, 3, 1, 4, 2, 5]));
}

#[test]
fn csv_is_refused_where_unavailable() {
    let out = pperfect(&["--format", "csv", "perm", "transpose", "--a", "2", "--b", "2"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn output_is_deterministic() {
    let args = ["structure", "search", "--group", "Z7", "--p", "3"];
    assert_eq!(pperfect(&args).stdout, pperfect(&args).stdout);
}

#[test]
fn acceptance_manifest_covers_nine_criteria() {
    let v = json_of(&pperfect(&["acceptance", "--manifest"]));
    let entries = v.as_array().unwrap();
    assert_eq!(entries.len(), 9);
    assert!(entries
        .iter()
        .all(|e| e["command"].as_str().unwrap().starts_with("pperfect ")));
}

#[test]
fn single_acceptance_criterion_runs() {
    let out = pperfect(&["--format", "text", "acceptance", "--only", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("criterion 2 [PASS]"));
}
