use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_purespin");

fn run(args: &[&str], out: &Path) -> Output {
    Command::new(BIN)
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn report(out: &Path, suite: &str) -> Value {
    let text = std::fs::read_to_string(out.join(format!("{suite}.json"))).unwrap();
    serde_json::from_str(&text).unwrap()
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema").join(name);
    let value: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&value).unwrap()
}

#[test]
fn clifford_passes_and_matches_schema() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["verify", "clifford", "--n", "3"], dir.path());
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = report(dir.path(), "verify-clifford");
    assert_eq!(r["passed"], true);
    assert!(schema("report.schema.json").is_valid(&r));
    let meta: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("verify-clifford.meta.json")).unwrap()).unwrap();
    assert!(schema("meta.schema.json").is_valid(&meta));
}

#[test]
fn purity_rejects_large_n() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["verify", "purity", "--n", "9"], dir.path());
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("n out of supported range"), "{}", stderr(&o));
    assert!(!dir.path().join("verify-purity.json").exists());
}

#[test]
fn purity_default_passes() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["verify", "purity"], dir.path());
    assert_eq!(code(&o), 0, "{}", stderr(&o));
}

#[test]
fn fock_rejects_zero_nmax() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(&["fock", "--nmax", "0"], dir.path())), 2);
}

#[test]
fn fock_spectrum_csv_and_nystrom() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["fock", "--nmax", "5", "--nystrom-grid", "24"], dir.path());
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let csv = std::fs::read_to_string(dir.path().join("fock.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("n,lambda_n,degeneracy,p0,E_n_eV"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 5);
    let e1 = rows[0][4];
    for row in &rows {
        let n = row[0];
        assert_eq!(row[2], n * n);
        assert!((row[4] * n * n / e1 - 1.0).abs() < 1e-12);
    }
    let r = report(dir.path(), "fock");
    assert!(schema("report.schema.json").is_valid(&r));
    let ny = &r["results"]["nystrom"];
    assert_eq!(ny["grid_size"], 24);
    let mult: Vec<u64> = ny["clusters"].as_array().unwrap().iter().map(|c| c["multiplicity"].as_u64().unwrap()).collect();
    assert_eq!(mult, [1, 4, 9]);
}

#[test]
fn wyler_reports_both_deltas() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["wyler"], dir.path());
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = &report(dir.path(), "wyler")["results"];
    assert!((r["inverse_alpha"].as_f64().unwrap() - 137.036).abs() < 1e-3);
    assert!(r["delta_vs_experiment"]["relative"].as_f64().unwrap().abs() < 1e-6);
    assert_eq!(r["delta_vs_paper_printed"]["reference"], 137.0608);
    assert!(r["overrides"].as_array().unwrap().is_empty());
}

#[test]
fn wyler_override_is_flagged() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["wyler", "--override", "V_Q5=1.0"], dir.path());
    assert_eq!(code(&o), 1);
    let r = report(dir.path(), "wyler");
    assert_eq!(r["results"]["overrides"], serde_json::json!(["Q5"]));
    assert_eq!(r["passed"], false);
    let line: Value = serde_json::from_str(stderr(&o).lines().last().unwrap()).unwrap();
    assert_eq!(line["suite"], "wyler");
}

#[test]
fn maxwell_and_gravity_pass_in_four_dimensions() {
    let dir = tempfile::tempdir().unwrap();
    for target in ["maxwell", "gravity"] {
        let o = run(&["verify", target], dir.path());
        assert_eq!(code(&o), 0, "{target}: {}", stderr(&o));
        assert_eq!(code(&run(&["verify", target, "--n", "3"], dir.path())), 2);
    }
}

#[test]
fn null_theorem_reports_four_arms() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["verify", "null-theorem", "--n", "4", "--trials", "1000", "--seed", "7"], dir.path());
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = report(dir.path(), "verify-null-theorem");
    assert!(schema("report.schema.json").is_valid(&r));
    for p in r["results"]["pairings"].as_array().unwrap() {
        let arms = p["arms"].as_array().unwrap();
        assert_eq!(arms.len(), 4);
        assert!(arms.iter().all(|a| a["residuals"].as_array().unwrap().len() == 1000));
    }
}

#[test]
fn identical_runs_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        assert_eq!(code(&run(&["verify", "null-theorem", "--trials", "50", "--seed", "3"], dir.path())), 0);
    }
    let read = |d: &tempfile::TempDir| std::fs::read(d.path().join("verify-null-theorem.json")).unwrap();
    assert_eq!(read(&a), read(&b));
}

#[test]
fn config_file_precedence_and_validation() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# clifford settings\nn = 2\nseed = 5\n").unwrap();
    let cfg_arg = cfg.to_str().unwrap();
    let o = run(&["verify", "clifford", "--config", cfg_arg, "--n", "4"], dir.path());
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = report(dir.path(), "verify-clifford");
    assert_eq!(r["config"]["n"], 4);
    assert_eq!(r["config"]["seed"], 5);

    std::fs::write(&cfg, "colour = red\n").unwrap();
    let o = run(&["verify", "clifford", "--config", cfg_arg], dir.path());
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("unknown configuration key"));
}

#[test]
fn report_keys_are_sorted() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(&["wyler"], dir.path())), 0);
    let text = std::fs::read_to_string(dir.path().join("wyler.json")).unwrap();
    let top: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("  \"") && !l.starts_with("   "))
        .map(|l| l.trim().split('"').nth(1).unwrap())
        .collect();
    let mut sorted = top.clone();
    sorted.sort();
    assert_eq!(top, sorted);
    assert!(text.ends_with("}\n"));
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(&["verify", "nothing"], dir.path())), 2);
    let o = Command::new(BIN).arg("--help").output().unwrap();
    assert_eq!(code(&o), 0);
}
