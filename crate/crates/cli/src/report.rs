use std::collections::BTreeMap;
use std::fmt::Display;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::config::{ExperimentConfig, Format};
use crate::{CliError, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

/// Per-trial data, emitted instead of the check list in CSV output.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub experiment: String,
    pub config: ExperimentConfig,
    pub checks: Vec<Check>,
    pub summary: Summary,
    pub info: BTreeMap<String, serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u128>,
}

impl Report {
    pub fn new(experiment: impl Into<String>, config: &ExperimentConfig) -> Self {
        Self {
            experiment: experiment.into(),
            config: config.clone(),
            checks: Vec::new(),
            summary: Summary::default(),
            info: BTreeMap::new(),
            table: None,
            wall_time_ms: None,
        }
    }

    pub fn check(&mut self, name: impl Into<String>, expected: impl Display, observed: impl Display, pass: bool) {
        self.checks.push(Check {
            name: name.into(),
            expected: expected.to_string(),
            observed: observed.to_string(),
            pass,
        });
        self.summary.total += 1;
        if pass {
            self.summary.passed += 1;
        } else {
            self.summary.failed += 1;
        }
    }

    /// `observed <= bound`.
    pub fn check_le(&mut self, name: impl Into<String>, observed: f64, bound: f64) {
        self.check(name, format!("<= {bound:e}"), format!("{observed:e}"), observed <= bound);
    }

    pub fn info(&mut self, key: impl Into<String>, value: impl Serialize) {
        self.info.insert(key.into(), serde_json::to_value(value).expect("serializable"));
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn merge(&mut self, other: Report) {
        for c in other.checks {
            self.check(c.name, c.expected, c.observed, c.pass);
        }
        self.info.extend(other.info);
    }
}

fn csv_err(e: impl Display) -> CliError {
    CliError::Schema(format!("csv: {e}"))
}

/// Renders a report: JSON as one document, CSV as one row per check (or per
/// table row when the report carries a table).
pub fn render(report: &Report, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).map_err(CliError::schema)?;
            s.push('\n');
            Ok(s.into_bytes())
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            match &report.table {
                Some(t) => {
                    w.write_record(&t.columns).map_err(csv_err)?;
                    for r in &t.rows {
                        w.write_record(r).map_err(csv_err)?;
                    }
                }
                None => {
                    w.write_record(["name", "expected", "observed", "pass"]).map_err(csv_err)?;
                    for c in &report.checks {
                        w.write_record([&c.name, &c.expected, &c.observed, &c.pass.to_string()])
                            .map_err(csv_err)?;
                    }
                }
            }
            w.into_inner().map_err(csv_err)
        }
    }
}

/// Writes the rendered report to `out`, or to standard output.
pub fn emit(report: &Report, format: Format, out: Option<&Path>) -> Result<()> {
    let bytes = render(report, format)?;
    match out {
        Some(path) => std::fs::write(path, bytes)
            .map_err(|e| CliError::Io { path: path.to_path_buf(), message: e.to_string() }),
        None => std::io::stdout()
            .write_all(&bytes)
            .map_err(|e| CliError::Io { path: "<stdout>".into(), message: e.to_string() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("demo", &ExperimentConfig::new("demo", 11).with_trials(Some(3)));
        r.check("a", 1, 1, true);
        r.check_le("b", 2e-3, 1e-3);
        r.check_le("nan", f64::NAN, 1.0);
        r
    }

    #[test]
    fn summary_counts() {
        let r = sample();
        assert_eq!(r.summary, Summary { total: 3, passed: 1, failed: 2 });
        assert!(!r.all_pass());
    }

    #[test]
    fn empty_report_gives_header_only_csv() {
        let r = Report::new("empty", &ExperimentConfig::new("empty", 0));
        let out = String::from_utf8(render(&r, Format::Csv).unwrap()).unwrap();
        assert_eq!(out, "name,expected,observed,pass\n");
    }

    #[test]
    fn json_echoes_seed_and_trials_and_is_stable() {
        let a = render(&sample(), Format::Json).unwrap();
        assert_eq!(a, render(&sample(), Format::Json).unwrap());
        let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
        assert_eq!(v["config"]["seed"], 11);
        assert_eq!(v["config"]["trials"], 3);
        assert!(v.get("table").is_none());
        let text = String::from_utf8(a).unwrap();
        let pos = |k: &str| text.find(&format!("\n  \"{k}\"")).unwrap();
        let order = ["experiment", "config", "checks", "summary", "info"].map(pos);
        assert!(order.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn table_replaces_checks_in_csv() {
        let mut r = sample();
        r.table = Some(Table { columns: vec!["trial".into(), "x".into()], rows: vec![vec!["0".into(), "1,5".into()]] });
        let out = String::from_utf8(render(&r, Format::Csv).unwrap()).unwrap();
        assert_eq!(out, "trial,x\n0,\"1,5\"\n");
    }

    #[test]
    fn io_errors_name_the_path() {
        let err = emit(&sample(), Format::Json, Some(Path::new("/nonexistent/dir/r.json"))).unwrap_err();
        assert!(err.to_string().contains("/nonexistent/dir/r.json"));
        assert_eq!(err.exit_code(), 2);
    }
}
