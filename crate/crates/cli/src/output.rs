//! Report serialization and atomic file writes.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde_json::{json, Value};

use crate::suites::SuiteOutcome;

pub const SCHEMA_VERSION: u64 = 1;

/// Pretty JSON with keys in sorted order and a trailing newline.
pub fn render_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Formats a float for CSV: plain decimal for ordinary magnitudes,
/// exponent form for very small or large ones.
pub fn csv_number(x: f64) -> String {
    let a = x.abs();
    if a != 0.0 && !(1e-4..1e15).contains(&a) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

pub fn report_value(outcome: &SuiteOutcome) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "suite": outcome.suite,
        "passed": outcome.passed,
        "config": outcome.config,
        "results": outcome.results,
        "failures": outcome.failures,
    })
}

/// Machine-readable one-line summary for stderr.
pub fn failure_summary(outcome: &SuiteOutcome) -> String {
    serde_json::to_string(&json!({
        "suite": outcome.suite,
        "passed": outcome.passed,
        "failures": outcome.failures,
    }))
    .expect("JSON values always serialize")
}

#[derive(Debug)]
pub struct Written {
    pub report: PathBuf,
    pub csv: Option<PathBuf>,
    pub meta: PathBuf,
}

fn unix_seconds(t: SystemTime) -> f64 {
    t.duration_since(UNIX_EPOCH).map_or(0.0, |d| d.as_secs_f64())
}

/// Writes `<suite>.json`, an optional `<suite>.csv`, and the
/// `<suite>.meta.json` sidecar that holds everything run-dependent.
pub fn write_reports(out: &Path, outcome: &SuiteOutcome, started: SystemTime) -> std::io::Result<Written> {
    let report = out.join(format!("{}.json", outcome.suite));
    write_atomic(&report, render_json(&report_value(outcome)).as_bytes())?;
    let csv = match &outcome.csv {
        Some(text) => {
            let path = out.join(format!("{}.csv", outcome.suite));
            write_atomic(&path, text.as_bytes())?;
            Some(path)
        }
        None => None,
    };
    let finished = SystemTime::now();
    let meta = out.join(format!("{}.meta.json", outcome.suite));
    let sidecar = json!({
        "schema_version": SCHEMA_VERSION,
        "suite": outcome.suite,
        "report": report.file_name().map(|s| s.to_string_lossy().into_owned()),
        "tool_version": env!("CARGO_PKG_VERSION"),
        "started_unix": unix_seconds(started),
        "finished_unix": unix_seconds(finished),
        "duration_seconds": finished.duration_since(started).map_or(0.0, |d| d.as_secs_f64()),
    });
    write_atomic(&meta, render_json(&sidecar).as_bytes())?;
    Ok(Written { report, csv, meta })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_sorted() {
        let v = json!({"zeta": 1, "alpha": {"b": 2, "a": 1}});
        assert_eq!(render_json(&v), "{\n  \"alpha\": {\n    \"a\": 1,\n    \"b\": 2\n  },\n  \"zeta\": 1\n}\n");
    }

    #[test]
    fn csv_numbers_use_dot_decimal() {
        assert_eq!(csv_number(0.5), "0.5");
        assert_eq!(csv_number(1.9928e-24), "1.9928e-24");
        assert_eq!(csv_number(0.0), "0");
        assert_eq!(csv_number(13.6), "13.6");
    }

    #[test]
    fn atomic_write_replaces_contents() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("nested/x.json");
        write_atomic(&p, b"one").unwrap();
        write_atomic(&p, b"two").unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "two");
        assert_eq!(std::fs::read_dir(p.parent().unwrap()).unwrap().count(), 1);
    }
}
