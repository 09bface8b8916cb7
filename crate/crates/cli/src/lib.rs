//! Command-line harness for `rmtdiff`: seeded parallel Monte Carlo,
//! histograms against theory, figure data and the acceptance suite.

pub mod config;
pub mod error;
pub mod figures;
pub mod hist;
pub mod mc;
pub mod svg;
pub mod verify;

pub use config::{Command, Format, Grid, RunConfig};
pub use error::{CliError, CliResult};
pub use hist::{run_hist, HistRun, HistogramResult, Theory};
pub use verify::{run_verify, Criterion, Level};
