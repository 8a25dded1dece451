//! End-to-end tests of the `qconn` binary: every subcommand is exercised
//! through a real process, checking output format, exit codes, provenance
//! headers, determinism, and failure hygiene (no partial output files).

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use qconn::sim::TABLE_HEADER;

/// Scratch directory under the system temp dir, removed on drop. The tag
/// keeps parallel tests in the same process from colliding.
struct TempDir(PathBuf);

impl TempDir {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("qconn-cli-{tag}-{}", std::process::id()));
        let _ = fs::remove_dir_all(&dir);
        fs::create_dir_all(&dir).expect("create scratch dir");
        TempDir(dir)
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.join(name)
    }
}

impl Drop for TempDir {
    fn drop(&mut self) {
        let _ = fs::remove_dir_all(&self.0);
    }
}

fn qconn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qconn"))
        .args(args)
        .output()
        .expect("qconn binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

/// Extracts the number from a `name = value` line.
fn value_of(stdout: &str, name: &str) -> f64 {
    let prefix = format!("{name} = ");
    stdout
        .lines()
        .find_map(|l| l.strip_prefix(&prefix))
        .unwrap_or_else(|| panic!("no `{name} = ` line in:\n{stdout}"))
        .parse()
        .unwrap_or_else(|e| panic!("unparsable `{name}` value: {e}"))
}

/// Data rows of a rendered sweep table (everything after the header row,
/// comments skipped).
fn table_rows(text: &str) -> Vec<&str> {
    let mut lines = text.lines().skip_while(|l| *l != TABLE_HEADER);
    assert_eq!(lines.next(), Some(TABLE_HEADER), "table header missing in:\n{text}");
    lines.filter(|l| !l.is_empty()).collect()
}

#[test]
fn capacity_identity_doubles_with_entanglement() {
    let out = qconn(&["capacity", "--channel", "identity", "--mode", "both"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!((value_of(&text, "C") - 1.0).abs() <= 1e-6, "{text}");
    assert!((value_of(&text, "C_E") - 2.0).abs() <= 1e-6, "{text}");
}

#[test]
fn link_defaults_reproduce_the_frozen_budget() {
    let out = qconn(&["link"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.lines().any(|l| l == "qber = 0.0101"), "{text}");
    assert!(text.lines().any(|l| l == "r_raw = 0.1"), "{text}");
    let skf = value_of(&text, "secret_key_fraction");
    assert!((skf - 0.8370893093672886).abs() <= 1e-12, "{text}");
}

#[test]
fn connectivity_of_the_unit_grid_is_one() {
    let out = qconn(&["connectivity", "--grid", "3x3", "--uniform-weight", "1"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!((value_of(&text, "lambda2") - 1.0).abs() <= 1e-9, "{text}");
}

#[test]
fn sweep_preset_is_deterministic_and_seed_sensitive() {
    let tmp = TempDir::new("sweep-preset");
    let first = tmp.path("first.csv");
    let second = tmp.path("second.csv");
    let reseeded = tmp.path("reseeded.csv");

    for (seed, path) in [("0", &first), ("0", &second), ("1", &reseeded)] {
        let out = qconn(&[
            "--seed",
            seed,
            "sweep",
            "--preset",
            "group-sweep",
            "--output",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0, "stderr: {}", stderr_of(&out));
        assert!(stdout_of(&out).is_empty(), "file output should leave stdout empty");
    }

    let text = fs::read_to_string(&first).unwrap();
    let top = text.lines().next().unwrap();
    assert!(top.starts_with("# qconn "), "{top}");
    assert!(top.contains("seed=0"), "{top}");
    assert!(top.contains("config-digest="), "{top}");
    assert_eq!(table_rows(&text).len(), 48, "3 groups × 8 μ × 2 modes");

    assert_eq!(text, fs::read_to_string(&second).unwrap(), "same seed, same bytes");
    assert_ne!(text, fs::read_to_string(&reseeded).unwrap(), "seed must matter");
}

#[test]
fn sweep_without_flags_prints_provenance_then_table() {
    let out = qconn(&["sweep"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.starts_with("# qconn "), "{text}");
    // Default config: one baseline point in each of the two modes.
    assert_eq!(table_rows(&text).len(), 2, "{text}");
}

#[test]
fn set_override_reaches_the_table_through_a_preset() {
    let out = qconn(&[
        "sweep",
        "--preset",
        "group-sweep",
        "--set",
        "learning.iterations=50",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    let rows = table_rows(&text);
    assert_eq!(rows.len(), 48);
    for row in rows {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields.len(), 9, "{row}");
        assert_eq!(fields[7], "50", "iterations column should reflect the override: {row}");
    }
}

#[test]
fn sweep_with_missing_config_file_fails() {
    let tmp = TempDir::new("missing-config");
    let missing = tmp.path("missing.cfg");
    let out = qconn(&["sweep", "--config", missing.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stderr_of(&out).contains("missing.cfg"), "{}", stderr_of(&out));
    assert!(stdout_of(&out).is_empty());
}

#[test]
fn bad_config_aggregates_errors_and_writes_nothing() {
    let tmp = TempDir::new("bad-config");
    let cfg = tmp.path("bad.cfg");
    fs::write(&cfg, "[learning]\nalpha = 1.5\n\n[physics]\neta = fast\n").unwrap();
    let dest = tmp.path("out.csv");
    let out = qconn(&[
        "sweep",
        "--config",
        cfg.to_str().unwrap(),
        "--output",
        dest.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    let err = stderr_of(&out);
    assert!(err.contains("alpha"), "both problems reported together: {err}");
    assert!(err.contains("eta"), "both problems reported together: {err}");
    assert!(!dest.exists(), "failed run must not create the output file");
    assert!(!tmp.path(".out.csv.tmp").exists(), "no temp file left behind");
}

#[test]
fn output_into_missing_directory_fails_without_partial_files() {
    let tmp = TempDir::new("missing-dir");
    let dest = tmp.path("nowhere/out.csv");
    let out = qconn(&[
        "sweep",
        "--preset",
        "harm",
        "--output",
        dest.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    assert!(stderr_of(&out).starts_with("error: "), "{}", stderr_of(&out));
    assert!(!dest.exists());
}

#[test]
fn config_output_path_is_honored_without_the_flag() {
    let tmp = TempDir::new("config-output");
    let dest = tmp.path("from_config.csv");
    let cfg = tmp.path("sweep.cfg");
    fs::write(&cfg, format!("[output]\npath = {}\n", dest.display())).unwrap();
    let out = qconn(&["sweep", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_of(&out));
    assert!(stdout_of(&out).is_empty());
    let text = fs::read_to_string(&dest).unwrap();
    assert_eq!(table_rows(&text).len(), 2);
}

#[test]
fn unknown_preset_lists_the_valid_names() {
    let out = qconn(&["sweep", "--preset", "bogus"]);
    assert_eq!(code(&out), 1);
    let err = stderr_of(&out);
    assert!(err.contains("group-sweep") && err.contains("collapse"), "{err}");
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let out = qconn(&["frobnicate"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn help_exits_zero() {
    let out = qconn(&["--help"]);
    assert_eq!(code(&out), 0);
    assert!(stdout_of(&out).contains("Usage"));
}

#[test]
fn harm_ranks_the_edge_midpoint_most_harmful() {
    let out = qconn(&["harm"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    let mut lines = text.lines().skip_while(|l| *l != "node,lambda2_after,delta");
    assert!(lines.next().is_some(), "harm table header missing:\n{text}");
    let first = lines.next().expect("at least one ranked node");
    assert!(
        first.starts_with("2,"),
        "node 2 should top the default 3×3 ranking: {first}"
    );
}

#[test]
fn recover_reports_both_candidate_groups() {
    let out = qconn(&["recover"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    let mut lines = text
        .lines()
        .skip_while(|l| *l != "group,steps,total_mu_spent,achieved_lambda2,target_lambda2,infeasible");
    assert!(lines.next().is_some(), "recover table header missing:\n{text}");
    let rows: Vec<&str> = lines.collect();
    assert!(rows.iter().any(|r| r.starts_with("5,")), "{text}");
    assert!(rows.iter().any(|r| r.starts_with("4+6+8,")), "{text}");
    assert!(rows.iter().all(|r| r.ends_with(",false")), "both plans feasible: {text}");
}
