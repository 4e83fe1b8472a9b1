//! Behavior tests for the command-line interface: every subcommand is a
//! thin adapter, so outputs are compared against direct library calls.

use randcomplex::{
    build_pattern, count_pattern_occurrences, sample_complex, ModelParams, SimplicialComplex,
};
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_randcomplex"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn write(path: &Path, text: &str) {
    std::fs::write(path, text).expect("test file written");
}

const PATH5: &str = "5 1\n0\n1\n2\n3\n4\n0 1\n1 2\n2 3\n3 4\n";

#[test]
fn sample_matches_the_library_and_roundtrips_through_count() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("y.txt");
    let out = run(&[
        "sample", "--g", "1", "--N", "8", "--r", "1", "--p", "0.8,0.6", "--seed", "11", "-o",
        file.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stderr(&out).contains("seed: 11"));

    let params = ModelParams::builder(1)
        .n(2)
        .ambient(8)
        .r(1)
        .probs(vec![0.8, 0.6])
        .build()
        .unwrap();
    let expected = sample_complex(&params, 11);
    let text = std::fs::read_to_string(&file).unwrap();
    assert_eq!(text, expected.to_text());

    let counted = count_pattern_occurrences(&expected, 1, 6).unwrap();
    let out = run(&["count", "--g", "1", "--complex", file.to_str().unwrap()]);
    assert!(out.status.success());
    let report = stdout(&out);
    assert!(report.contains(&format!("subsets: {}", counted.subsets)), "{report}");
    assert!(report.contains(&format!("labelings: {}", counted.labelings)), "{report}");
}

#[test]
fn sample_with_zero_probabilities_writes_a_bare_header() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("empty.txt");
    let out = run(&[
        "sample", "--g", "1", "--N", "6", "--r", "1", "--p", "0,0", "-o",
        file.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(&file).unwrap(), "6 1\n");
}

#[test]
fn sample_structured_embeds_the_text_format() {
    let out = run(&[
        "sample", "--g", "1", "--N", "5", "--r", "1", "--p", "0.7,0.5", "--seed", "2",
        "--format", "structured",
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["seed"], 2);
    let text = value["complex"].as_str().unwrap();
    let parsed = SimplicialComplex::from_text(text).unwrap();
    assert_eq!(parsed.ambient(), 5);
    let f: Vec<usize> =
        value["f_vector"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap() as usize).collect();
    assert_eq!(f, parsed.f_vector());
}

#[test]
fn expand_prints_the_path_trace() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("path.txt");
    write(&file, PATH5);
    let out = run(&["expand", "--complex", file.to_str().unwrap(), "--start", "0,2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("stage 0: {0, 2}"), "{text}");
    assert!(text.contains("stage 1: {0, 1, 2}"), "{text}");
    assert!(text.contains("1 determined by {0, 2}"), "{text}");
    assert!(text.contains("truncated: false"), "{text}");
    assert!(text.contains("is_seed: false"), "{text}");
}

#[test]
fn expand_from_the_full_vertex_set_is_a_seed() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("path.txt");
    write(&file, PATH5);
    let out = run(&["expand", "--complex", file.to_str().unwrap(), "--start", "0,1,2,3,4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("stage 0: {0, 1, 2, 3, 4}"), "{text}");
    assert!(!text.contains("stage 1:"), "{text}");
    assert!(text.contains("is_seed: true"), "{text}");
}

#[test]
fn expand_flags_truncated_runs() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("path.txt");
    write(&file, PATH5);
    let out = run(&[
        "expand", "--complex", file.to_str().unwrap(), "--start", "0,2", "--max-stages", "1",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("truncated: true"));
}

#[test]
fn expand_rejects_unknown_vertices() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("path.txt");
    write(&file, PATH5);
    let out = run(&["expand", "--complex", file.to_str().unwrap(), "--start", "0,9"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("error"));
}

#[test]
fn check_reports_no_critical_dimension_for_zero_alpha() {
    let out = run(&["check", "--g", "2", "--alpha", "0,0,0,0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("critical dimension: none"), "{text}");
    assert!(text.contains("> 1 variant): false"), "{text}");
    assert!(text.contains("< 1 variant): true"), "{text}");
}

#[test]
fn check_structured_carries_both_condition_variants() {
    let out = run(&["check", "--g", "3", "--alpha", "0.8,0.1,0,0,0,0,0", "--format", "structured"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["conditions"]["technical"], true);
    assert!(value["conditions"]["hyperbolic_gt"].is_boolean());
    assert!(value["conditions"]["hyperbolic_lt"].is_boolean());
    assert_eq!(value["params"]["g"], 3);
}

#[test]
fn check_rejects_malformed_alpha() {
    let out = run(&["check", "--g", "2", "--alpha", "0.5"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["check", "--g", "2", "--alpha", "-0.5,0,0,0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn count_exports_the_pattern_pair() {
    let dir = tempfile::tempdir().unwrap();
    let a_path = dir.path().join("a.txt");
    let b_path = dir.path().join("b.txt");
    let out = run(&[
        "count", "--g", "1", "--export-a", a_path.to_str().unwrap(), "--export-b",
        b_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "");

    let pair = build_pattern(1).unwrap();
    let a = SimplicialComplex::from_text(&std::fs::read_to_string(&a_path).unwrap()).unwrap();
    assert_eq!(a, pair.a);
    let b = SimplicialComplex::from_text(&std::fs::read_to_string(&b_path).unwrap()).unwrap();
    assert_eq!(b.f_vector(), pair.b.f_vector());
}

#[test]
fn count_without_inputs_is_a_usage_error() {
    let out = run(&["count", "--g", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn mc_echoes_the_seed_and_passes_a_smoke_run() {
    let out = run(&[
        "mc", "--g", "1", "--N", "6", "--r", "1", "--p", "0.9,0.5", "--trials", "10000",
        "--seed", "5",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("seed: 5"), "{text}");
    assert!(text.contains("within 4 stderr: PASS"), "{text}");
}

#[test]
fn mc_certain_clique_event_has_zero_variance() {
    let out = run(&[
        "mc", "--g", "1", "--N", "4", "--r", "1", "--p", "1,1", "--event", "clique-count",
        "--clique-size", "4", "--trials", "50",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("mean: 1"), "{text}");
    assert!(text.contains("variance: 0"), "{text}");
    assert!(text.contains("closed form: 1"), "{text}");
}

#[test]
fn mc_rejects_zero_trials_and_missing_clique_size() {
    let out = run(&[
        "mc", "--g", "1", "--N", "6", "--r", "1", "--p", "0.9,0.5", "--trials", "0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&[
        "mc", "--g", "1", "--N", "6", "--r", "1", "--p", "0.9,0.5", "--event", "clique-count",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sweep_emits_one_row_per_genus() {
    let out = run(&["sweep", "--g-from", "2", "--g-to", "10"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 10, "{text}");
    assert!(lines[0].starts_with("g,n,alpha0,alpha1,"));
    assert!(lines[1].starts_with("2,10,"));
    assert!(lines[9].starts_with("10,1024,"));
}

#[test]
fn sweep_strict_mode_flags_infeasible_rows_without_failing() {
    let out = run(&["sweep", "--g-from", "2", "--g-to", "5", "--strict-n"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for g in 2..=4u32 {
        let row = text.lines().find(|l| l.starts_with(&format!("{g},"))).unwrap();
        assert!(row.contains("clique_infeasible"), "{row}");
        assert!(row.contains("-inf"), "{row}");
    }
    let g5 = text.lines().find(|l| l.starts_with("5,")).unwrap();
    assert!(!g5.contains("clique_infeasible"), "{g5}");
}

#[test]
fn sweep_structured_matches_the_library_report() {
    let out = run(&["sweep", "--g-from", "3", "--g-to", "3", "--format", "structured"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let row = &value.as_array().unwrap()[0];
    assert_eq!(row["g"], 3);
    assert_eq!(row["n"], 14);
    assert!(row["log_n_e_ch"].is_number());
}

#[test]
fn parameter_file_is_read_and_flags_override_it() {
    let dir = tempfile::tempdir().unwrap();
    let params = dir.path().join("point.params");
    write(&params, "g = 1\nN = 6\nr = 1\np = 0.9, 0.5\nseed = 4\n");

    let from_file = run(&["sample", "--params", params.to_str().unwrap()]);
    assert!(from_file.status.success());
    let lib = ModelParams::builder(1).n(2).ambient(6).r(1).probs(vec![0.9, 0.5]).build().unwrap();
    assert_eq!(stdout(&from_file), sample_complex(&lib, 4).to_text());

    let overridden = run(&["sample", "--params", params.to_str().unwrap(), "--seed", "9"]);
    assert!(overridden.status.success());
    assert_eq!(stdout(&overridden), sample_complex(&lib, 9).to_text());
}

#[test]
fn csv_format_is_sweep_only() {
    let out = run(&["sample", "--g", "1", "--N", "6", "--r", "1", "--p", "0.5,0.5",
        "--format", "csv"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("sweep"));
}

#[test]
fn usage_errors_exit_with_one() {
    let out = run(&["sample", "--bogus"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["sample"]);
    assert_eq!(out.status.code(), Some(1), "missing g is a config error");
    let out = run(&["sweep", "--g-from", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn help_exits_cleanly() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("sample"));
}
