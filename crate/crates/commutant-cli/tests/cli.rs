//! Black-box tests of the installed binary: exit codes, output shapes, and
//! determinism across worker counts.

use std::path::PathBuf;
use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_commutant"))
        .args(args)
        .env_remove("COMMUTANT_WORKERS")
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf8 stdout"),
        String::from_utf8(out.stderr).expect("utf8 stderr"),
    )
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("commutant-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).expect("scratch file writes");
    path
}

const Z4_TABLE: &str = "\
semiring z4 order 4
elements: 0 1 2 3
add:
0 1 2 3
1 2 3 0
2 3 0 1
3 0 1 2
mul:
0 0 0 0
0 1 2 3
0 2 0 2
0 3 2 1
";

#[test]
fn semiring_check_accepts_a_valid_table() {
    let file = scratch("valid.sr", Z4_TABLE);
    let (code, stdout, _) = run(&["semiring", "check", file.to_str().unwrap()]);
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.contains("axioms: ok"));
    assert!(stdout.contains("commutative: yes"));
    assert!(stdout.contains("entire: no"));
    assert!(stdout.contains("zero divisors: (2, 2)"));
}

#[test]
fn semiring_check_flags_a_broken_table_with_a_witness() {
    let broken = Z4_TABLE.replace("0 3 2 1", "0 3 2 2");
    let file = scratch("broken.sr", &broken);
    let (code, stdout, _) = run(&["semiring", "check", file.to_str().unwrap()]);
    assert_eq!(code, 2, "{stdout}");
    assert!(stdout.contains("axioms: violated"));
    assert!(stdout.contains("witness"));
}

#[test]
fn semiring_check_reports_parse_position() {
    let file = scratch("short.sr", "semiring bad order 3\nelements: 0 1\n");
    let (code, _, stderr) = run(&["semiring", "check", file.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(stderr.contains("line"), "{stderr}");
}

#[test]
fn graph_diameter_prints_the_value() {
    let (code, stdout, _) = run(&["graph", "diameter", "--semiring", "modular:4", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "3\n");
}

#[test]
fn graph_diameter_prints_inf_when_disconnected() {
    let (code, stdout, _) = run(&["graph", "diameter", "--semiring", "boolean", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "inf\n");
}

#[test]
fn graph_distance_prints_value_and_path() {
    let a = scratch("j2.m", "matrix 2 over modular:4\n0 1\n0 0\n");
    let b = scratch("j2t.m", "matrix 2 over modular:4\n0 0\n1 0\n");
    let (code, stdout, _) = run(&[
        "graph",
        "distance",
        "--semiring",
        "modular:4",
        "--n",
        "2",
        "--a",
        a.to_str().unwrap(),
        "--b",
        b.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{stdout}");
    let mut lines = stdout.lines();
    assert_eq!(lines.next(), Some("3"));
    let path = lines.next().expect("path line");
    assert!(path.starts_with("path: "));
    assert_eq!(path.trim_start_matches("path: ").split(' ').count(), 4);
}

#[test]
fn graph_components_lists_each_component() {
    let (code, stdout, _) = run(&["graph", "components", "--semiring", "boolean", "--n", "2"]);
    assert_eq!(code, 0);
    let mut lines = stdout.lines();
    assert_eq!(lines.next(), Some("components 2"));
    assert_eq!(lines.clone().count(), 2);
    assert!(lines.all(|l| l.starts_with("least ")));
}

#[test]
fn dot_export_has_one_node_line_per_vertex() {
    let (code, stdout, _) = run(&[
        "graph", "export", "--semiring", "boolean", "--n", "2", "--format", "dot",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout.matches("[label=").count(), 14);
    assert!(stdout.starts_with("graph commuting {"));
}

#[test]
fn exports_are_identical_across_worker_counts() {
    let base = [
        "graph", "export", "--semiring", "modular:4", "--n", "2", "--format", "csv",
    ];
    let (c1, one, _) = run(&[&base[..], &["--workers", "1"]].concat());
    let (c2, two, _) = run(&[&base[..], &["--workers", "2"]].concat());
    let (c3, three, _) = run(&[&base[..], &["--workers", "3"]].concat());
    assert_eq!((c1, c2, c3), (0, 0, 0));
    assert_eq!(one, two);
    assert_eq!(two, three);
    assert!(one.starts_with("u,v\n"));
}

#[test]
fn verify_reports_are_identical_across_worker_counts() {
    let strip = |stdout: &str| {
        let mut v: serde_json::Value = serde_json::from_str(stdout).expect("json report");
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    let (c1, one, _) = run(&["verify", "thm-4.2", "--workers", "1"]);
    let (c2, two, _) = run(&["verify", "thm-4.2", "--workers", "2"]);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(strip(&one), strip(&two));
}

#[test]
fn verify_passes_and_emits_json() {
    let (code, stdout, stderr) = run(&["verify", "lemma-2.1"]);
    assert_eq!(code, 0, "{stderr}");
    let report: serde_json::Value = serde_json::from_str(&stdout).expect("json report");
    assert_eq!(report["theorem"], "lemma-2.1");
    assert_eq!(report["status"], "pass");
    assert!(stderr.contains("lemma-2.1: pass"));
}

#[test]
fn verify_with_starved_budget_exits_two() {
    let (code, stdout, stderr) = run(&["verify", "lemma-2.1", "--budget", "4"]);
    assert_eq!(code, 2, "{stdout}");
    assert!(stderr.contains("incomplete"));
}

#[test]
fn verify_rejects_unknown_ids() {
    let (code, _, stderr) = run(&["verify", "thm-9.9"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("unknown theorem id"));
}

#[test]
fn tropical_is_rejected_by_enumeration_subcommands() {
    let (code, _, stderr) = run(&["graph", "diameter", "--semiring", "tropical", "--n", "3"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("finite"), "{stderr}");
}

#[test]
fn matrix_files_with_foreign_elements_name_the_token() {
    let bad = scratch("bad.m", "matrix 2 over modular:4\n0 5\n0 0\n");
    let (code, _, stderr) = run(&["centralizer", "--matrix", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(stderr.contains("\"5\""), "{stderr}");
}

#[test]
fn centralizer_lists_members_in_code_order() {
    let m = scratch("e12.m", "matrix 2 over boolean\n0 1\n0 0\n");
    let (code, stdout, _) = run(&["centralizer", "--matrix", m.to_str().unwrap()]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "centralizer size 4");
    let codes: Vec<u64> = lines[1..]
        .iter()
        .map(|l| l.split(' ').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(codes, vec![0, 4, 9, 13]);
}

#[test]
fn certify_refutes_close_endpoints() {
    let a = scratch("adj-a.m", "matrix 3 over boolean\n0 0 1\n0 0 0\n1 1 0\n");
    let (code, stdout, _) = run(&[
        "certify-ge4",
        "--a",
        a.to_str().unwrap(),
        "--b",
        a.to_str().unwrap(),
    ]);
    assert_eq!(code, 2, "{stdout}");
    assert!(stdout.starts_with("refuted"));
}

#[test]
fn memory_cap_below_the_minimum_is_a_usage_error() {
    let (code, _, stderr) = run(&[
        "graph", "diameter", "--semiring", "boolean", "--n", "2", "--memory-cap-mib", "32",
    ]);
    assert_eq!(code, 1);
    assert!(stderr.contains("64"), "{stderr}");
}

#[test]
fn unknown_subcommands_are_usage_errors() {
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 1);
}

#[test]
fn zero_workers_is_a_usage_error() {
    let (code, _, stderr) = run(&["graph", "diameter", "--semiring", "boolean", "--n", "2", "--workers", "0"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("at least 1"), "{stderr}");
}
