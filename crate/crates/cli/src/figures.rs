//! Data and SVG renderings for the paper's figures.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rmtdiff::finite::JointDensity;
use rmtdiff::linalg::EnsembleParams;
use rmtdiff::moments::trace_distance_asymptotic;
use rmtdiff::Error;

use crate::config::{Command, RunConfig, DEFAULT_BINS};
use crate::error::{CliError, CliResult};
use crate::hist::run_hist;
use crate::mc::{mean_stderr, sample_spectra};
use crate::svg;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FigureId {
    Fig1,
    Fig2a,
    Fig2b,
    Fig2c,
    Fig2d,
    Fig4a,
    Fig4b,
    Fig4c,
    Fig4d,
    Fig5,
    Fig6,
    Fig7,
}

impl FigureId {
    pub fn name(self) -> &'static str {
        use FigureId::*;
        match self {
            Fig1 => "fig1",
            Fig2a => "fig2a",
            Fig2b => "fig2b",
            Fig2c => "fig2c",
            Fig2d => "fig2d",
            Fig4a => "fig4a",
            Fig4b => "fig4b",
            Fig4c => "fig4c",
            Fig4d => "fig4d",
            Fig5 => "fig5",
            Fig6 => "fig6",
            Fig7 => "fig7",
        }
    }

    pub fn parse(s: &str) -> CliResult<Self> {
        <Self as clap::ValueEnum>::from_str(s, true).map_err(|_| CliError::Unsupported(format!("figure {s:?}")))
    }

    /// `(suffix, N, M, p, q, samples)` of each histogram panel.
    fn panels(self) -> Vec<(&'static str, usize, usize, f64, f64, usize)> {
        use FigureId::*;
        match self {
            Fig2a => vec![("", 2, 10, 1.0, 1.0, 30_000)],
            Fig2b => vec![("", 3, 3, 1.0, 1.0, 30_000)],
            Fig2c => vec![("", 20, 35, 1.0, 1.0, 5_000)],
            Fig2d => vec![("", 50, 70, 1.0, 1.0, 5_000)],
            Fig4a => vec![("", 40, 50, 1.0, 1.0, 3_000)],
            Fig4b => vec![("", 80, 50, 1.0, 1.0, 3_000)],
            Fig4c => vec![("", 80, 30, 1.0, 1.0, 3_000)],
            Fig4d => vec![("", 100, 20, 1.0, 1.0, 3_000)],
            Fig6 => vec![("_left", 50, 50, 1.0, 0.2, 3_000), ("_right", 50, 100, 1.0, 2.0, 3_000)],
            Fig7 => vec![("_left", 40, 60, 1.0, 4.0, 3_000), ("_right", 40, 100, 1.0, 0.4, 3_000)],
            Fig1 | Fig5 => vec![],
        }
    }
}

/// Shared settings for figure runs.
#[derive(Debug, Clone, PartialEq)]
pub struct FigOptions {
    pub out_dir: PathBuf,
    pub seed: u64,
    pub workers: usize,
    /// Replaces the caption sample counts when set.
    pub samples: Option<usize>,
    pub bins: usize,
}

impl FigOptions {
    pub fn new(out_dir: impl Into<PathBuf>) -> Self {
        Self {
            out_dir: out_dir.into(),
            seed: 1,
            workers: crate::config::DEFAULT_WORKERS,
            samples: None,
            bins: DEFAULT_BINS,
        }
    }
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.to_path_buf(),
            source,
        })?;
    }
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes `<id>[_panel].csv` and `.svg` into `opts.out_dir`; returns the paths.
pub fn run_fig(id: FigureId, opts: &FigOptions) -> CliResult<Vec<PathBuf>> {
    let mut written = Vec::new();
    let mut emit = |stem: String, csv: String, svg: String| -> CliResult<()> {
        for (ext, body) in [("csv", csv), ("svg", svg)] {
            let path = opts.out_dir.join(format!("{stem}.{ext}"));
            write_file(&path, &body)?;
            written.push(path);
        }
        Ok(())
    };
    match id {
        FigureId::Fig1 => {
            let (csv, svg) = fig1_joint_density(101)?;
            emit(id.name().into(), csv, svg)?;
        }
        FigureId::Fig5 => {
            let (csv, svg) = fig5_trace_distance(opts)?;
            emit(id.name().into(), csv, svg)?;
        }
        _ => {
            for (suffix, n, m, p, q, samples) in id.panels() {
                let params = EnsembleParams::new(n, m, p, q, opts.seed)?;
                let mut cfg = RunConfig::new(Command::Hist, params, opts.samples.unwrap_or(samples));
                cfg.bins = opts.bins;
                cfg.workers = opts.workers;
                let run = run_hist(&cfg)?;
                let title = format!("N={n}, M={m}, p={p}, q={q}: L1 = {:.4}", run.l1);
                let h = &run.histogram;
                let svg = svg::histogram(&h.bin_edges, &h.normalized_density, &run.theory, &title);
                emit(format!("{}{suffix}", id.name()), run.to_csv(), svg)?;
            }
        }
    }
    Ok(written)
}

/// `N = 3, M = 3` joint density on a `k x k` grid of `(lambda_1, lambda_2)`.
pub fn fig1_joint_density(k: usize) -> CliResult<(String, String)> {
    let jd = JointDensity::new(3, 3)?;
    let axis: Vec<f64> = (0..k).map(|i| -1.0 + 2.0 * i as f64 / (k - 1) as f64).collect();
    let mut values = Vec::with_capacity(k * k);
    let mut csv = String::from("lambda1,lambda2,density\n");
    for &b in &axis {
        for &a in &axis {
            let v = match jd.density(&[a, b, -a - b]) {
                Err(Error::BoundaryPoint) => 0.0,
                other => other?,
            };
            values.push(v);
            let _ = writeln!(csv, "{a:.16e},{b:.16e},{v:.16e}");
        }
    }
    let svg = svg::heatmap(&axis, &axis, &values, "joint eigenvalue density, N = 3, M = 3");
    Ok((csv, svg))
}

/// Asymptotic trace distance over `c in (0, 6]` and Monte Carlo dots at `N = 100`.
pub fn fig5_trace_distance(opts: &FigOptions) -> CliResult<(String, String)> {
    let curve_c: Vec<f64> = (1..=300).map(|i| 6.0 * i as f64 / 300.0).collect();
    let curve: Vec<f64> = curve_c.iter().map(|&c| trace_distance_asymptotic(c)).collect::<Result<_, _>>()?;
    let n = 100;
    let samples = opts.samples.unwrap_or(100);
    let mut csv = String::from("kind,c,trace_distance,stderr\n");
    for (c, d) in curve_c.iter().zip(&curve) {
        let _ = writeln!(csv, "theory,{c:.16e},{d:.16e},0");
    }
    let (mut dot_c, mut dot_d) = (Vec::new(), Vec::new());
    for m in [400, 200, 100, 67, 50, 40, 33, 25, 20, 17] {
        let params = EnsembleParams::symmetric(n, m, opts.seed)?;
        let spectra = sample_spectra(&params, samples, opts.workers)?;
        let td: Vec<f64> = spectra.iter().map(|s| s.half_trace_norm() / n as f64).collect();
        let (mean, err) = mean_stderr(&td);
        let c = params.ratio();
        let _ = writeln!(csv, "monte_carlo,{c:.16e},{mean:.16e},{err:.16e}");
        dot_c.push(c);
        dot_d.push(mean);
    }
    let svg = svg::lines(&[(&curve_c, &curve)], Some((&dot_c, &dot_d)), "trace distance vs c");
    Ok((csv, svg))
}
