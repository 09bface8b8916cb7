use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rmtdiff::linalg::EnsembleParams;

use crate::error::{CliError, CliResult};

pub const DEFAULT_BINS: usize = 60;
pub const DEFAULT_WORKERS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Sample,
    Hist,
    Aed,
    Moments,
    Distance,
    Fig,
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Svg,
}

/// Evaluation grid `lo:hi:count`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl Grid {
    pub fn new(lo: f64, hi: f64, count: usize) -> CliResult<Self> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(CliError::Usage(format!("grid needs finite lo < hi, got {lo}:{hi}")));
        }
        if count < 2 {
            return Err(CliError::Usage(format!("grid needs at least 2 points, got {count}")));
        }
        Ok(Self { lo, hi, count })
    }

    pub fn points(&self) -> Vec<f64> {
        let step = (self.hi - self.lo) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| if i + 1 == self.count { self.hi } else { self.lo + step * i as f64 })
            .collect()
    }
}

impl FromStr for Grid {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        let bad = || CliError::Usage(format!("grid must look like lo:hi:count, got {s:?}"));
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, count] = parts[..] else { return Err(bad()) };
        Grid::new(
            lo.trim().parse().map_err(|_| bad())?,
            hi.trim().parse().map_err(|_| bad())?,
            count.trim().parse().map_err(|_| bad())?,
        )
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.lo, self.hi, self.count)
    }
}

/// Everything a single run needs.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub params: EnsembleParams,
    pub samples: usize,
    pub bins: usize,
    pub grid: Option<Grid>,
    pub output_path: Option<PathBuf>,
    pub workers: usize,
    pub format: Format,
}

impl RunConfig {
    pub fn new(command: Command, params: EnsembleParams, samples: usize) -> Self {
        Self {
            command,
            params,
            samples,
            bins: DEFAULT_BINS,
            grid: None,
            output_path: None,
            workers: DEFAULT_WORKERS,
            format: Format::Csv,
        }
    }

    pub fn validate(&self) -> CliResult<()> {
        self.params.validate()?;
        if self.samples == 0 {
            return Err(CliError::Usage("samples must be at least 1".into()));
        }
        if self.bins < 2 {
            return Err(CliError::Usage(format!("bins must be at least 2, got {}", self.bins)));
        }
        if self.workers == 0 {
            return Err(CliError::Usage("workers must be at least 1".into()));
        }
        Ok(())
    }
}
