use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{CliError, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Everything a run depends on. `output`, `format`, `jobs` and `timing` do not
/// change results and are left out of the report echo.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ExperimentConfig {
    pub command: String,
    pub params: BTreeMap<String, String>,
    pub inputs: Vec<PathBuf>,
    pub seed: u64,
    pub trials: Option<usize>,
    pub tolerances: BTreeMap<String, f64>,
    #[serde(skip)]
    pub output: Option<PathBuf>,
    #[serde(skip)]
    pub format: Format,
    #[serde(skip)]
    pub jobs: usize,
    #[serde(skip)]
    pub timing: bool,
}

/// Optional JSON config file; every field may be overridden by a flag.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    pub jobs: Option<usize>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub timing: Option<bool>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io { path: path.to_path_buf(), message: e.to_string() })?;
        serde_json::from_str(&text).map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))
    }
}

impl ExperimentConfig {
    pub fn new(command: impl Into<String>, seed: u64) -> Self {
        Self { command: command.into(), seed, jobs: 1, ..Self::default() }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn with_trials(mut self, trials: Option<usize>) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }
}

/// Run context: the config plus a worker pool.
pub struct Ctx {
    pub config: ExperimentConfig,
    pool: rayon::ThreadPool,
}

impl Ctx {
    pub fn new(config: ExperimentConfig) -> Result<Self> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .map_err(|e| CliError::Schema(format!("worker pool: {e}")))?;
        Ok(Self { config, pool })
    }

    pub fn seed(&self) -> u64 {
        self.config.seed
    }

    pub fn trials_or(&self, default: usize) -> usize {
        self.config.trials.unwrap_or(default)
    }

    pub fn tol(&self, name: &str, default: f64) -> f64 {
        self.config.tolerances.get(name).copied().unwrap_or(default)
    }

    /// `f(0), ..., f(n-1)` on the pool, in index order.
    pub fn par_map<R: Send>(&self, n: usize, f: impl Fn(u64) -> R + Sync + Send) -> Vec<R> {
        self.pool.install(|| (0..n as u64).into_par_iter().map(f).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn par_map_keeps_index_order() {
        let serial = Ctx::new(ExperimentConfig::new("t", 0)).unwrap();
        let parallel = Ctx::new(ExperimentConfig::new("t", 0).with_jobs(4)).unwrap();
        let f = |i: u64| (i, i * i);
        let a = serial.par_map(500, f);
        assert_eq!(a, parallel.par_map(500, f));
        assert!(a.iter().enumerate().all(|(k, (i, _))| *i == k as u64));
    }

    #[test]
    fn tolerance_overrides() {
        let mut c = ExperimentConfig::new("t", 0);
        c.tolerances.insert("hull".into(), 1e-6);
        let ctx = Ctx::new(c).unwrap();
        assert_eq!(ctx.tol("hull", 1e-9), 1e-6);
        assert_eq!(ctx.tol("other", 1e-9), 1e-9);
        assert_eq!(ctx.trials_or(12), 12);
    }

    #[test]
    fn config_file_rejects_unknown_fields() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.json");
        std::fs::write(&p, r#"{"seed": 1, "sead": 2}"#).unwrap();
        assert!(matches!(ConfigFile::load(&p), Err(CliError::Schema(_))));
        std::fs::write(&p, r#"{"seed": 1, "format": "csv"}"#).unwrap();
        let f = ConfigFile::load(&p).unwrap();
        assert_eq!((f.seed, f.format), (Some(1), Some(Format::Csv)));
    }
}
