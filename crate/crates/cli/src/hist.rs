//! Pooled eigenvalue histograms and the matching theory curves.

use std::fmt::Write as _;

use rmtdiff::asym::AedSpec;
use rmtdiff::finite::{JointDensity, N2Density};
use rmtdiff::linalg::{EnsembleParams, SpectrumSample};
use rmtdiff::quad::{integrate, Tolerance};

use crate::config::{Grid, RunConfig};
use crate::error::{CliError, CliResult};
use crate::mc::sample_spectra;

#[derive(Debug, Clone, PartialEq)]
pub struct HistogramResult {
    pub bin_edges: Vec<f64>,
    pub counts: Vec<u64>,
    /// `count / (total eigenvalues * bin width)`.
    pub normalized_density: Vec<f64>,
    pub total_samples: usize,
    pub total_eigenvalues: u64,
    /// Eigenvalues with `|x| <` the atom threshold, kept out of the bins.
    pub atom_count: u64,
}

impl HistogramResult {
    pub fn from_spectra(spectra: &[SpectrumSample], lo: f64, hi: f64, bins: usize, atom_threshold: Option<f64>) -> Self {
        let width = (hi - lo) / bins as f64;
        let bin_edges: Vec<f64> = (0..=bins)
            .map(|i| if i == bins { hi } else { lo + width * i as f64 })
            .collect();
        let mut counts = vec![0u64; bins];
        let (mut total, mut atom) = (0u64, 0u64);
        for x in spectra.iter().flat_map(|s| s.eigenvalues.iter().copied()) {
            total += 1;
            if atom_threshold.is_some_and(|t| x.abs() < t) {
                atom += 1;
                continue;
            }
            if x < lo || x > hi {
                continue;
            }
            let k = (((x - lo) / width) as usize).min(bins - 1);
            counts[k] += 1;
        }
        let normalized_density = counts
            .iter()
            .zip(bin_edges.windows(2))
            .map(|(&n, e)| if total == 0 { 0.0 } else { n as f64 / (total as f64 * (e[1] - e[0])) })
            .collect();
        Self {
            bin_edges,
            counts,
            normalized_density,
            total_samples: spectra.len(),
            total_eigenvalues: total,
            atom_count: atom,
        }
    }

    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    pub fn in_range_fraction(&self) -> f64 {
        self.counts.iter().sum::<u64>() as f64 / self.total_eigenvalues as f64
    }

    pub fn atom_fraction(&self) -> f64 {
        self.atom_count as f64 / self.total_eigenvalues as f64
    }

    /// `sum_bins |empirical - theory| * width`.
    pub fn l1_distance(&self, theory: &[f64]) -> f64 {
        self.normalized_density
            .iter()
            .zip(theory)
            .zip(self.bin_edges.windows(2))
            .map(|((e, t), w)| (e - t).abs() * (w[1] - w[0]))
            .sum()
    }
}

/// Density of pooled `x = N lambda` predicted for an ensemble.
#[derive(Debug)]
pub enum Theory {
    /// Exact `N = 2` law, scaled by `p` (requires `p = q`).
    Exact2 { law: N2Density, n: usize, p: f64 },
    /// Exact `N = 3` single-eigenvalue marginal, scaled by `p`.
    Exact3 { law: Box<JointDensity>, n: usize, p: f64 },
    /// Asymptotic density of `N (p rho_1 - q rho_2)`: `(1/p) rho(x / p)`.
    Asymptotic { spec: AedSpec, p: f64 },
}

impl Theory {
    /// Exact law when available (`N <= 3`, `N <= M`, `p = q`), otherwise
    /// the asymptotic density at `c = N / M`, `eta = q / p`.
    pub fn for_params(params: &EnsembleParams) -> CliResult<Self> {
        let (n, m, p) = (params.n_small, params.m_large, params.weight_p);
        let exact = params.weight_p == params.weight_q && n <= m;
        Ok(match n {
            2 if exact => Theory::Exact2 { law: N2Density::new(m)?, n, p },
            3 if exact => Theory::Exact3 {
                law: Box::new(JointDensity::new(3, m)?),
                n,
                p,
            },
            _ => Theory::asymptotic(params)?,
        })
    }

    pub fn asymptotic(params: &EnsembleParams) -> CliResult<Self> {
        Ok(Theory::Asymptotic {
            spec: AedSpec::new(params.ratio(), params.eta())?,
            p: params.weight_p,
        })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Theory::Exact2 { .. } | Theory::Exact3 { .. } => "exact",
            Theory::Asymptotic { .. } => "asymptotic",
        }
    }

    pub fn density(&self, x: f64) -> rmtdiff::Result<f64> {
        match self {
            Theory::Exact2 { law, n, p } => {
                let s = *n as f64 * p;
                let lambda = x / s;
                if lambda.abs() >= 1.0 {
                    return Ok(0.0);
                }
                Ok(law.density(lambda)? / s)
            }
            Theory::Exact3 { law, n, p } => {
                let s = *n as f64 * p;
                Ok(law.marginal(x / s)? / s)
            }
            Theory::Asymptotic { spec, p } => Ok(spec.density(x / p)? / p),
        }
    }

    /// Range in `x` carrying the continuous part.
    pub fn support(&self) -> CliResult<(f64, f64)> {
        match self {
            Theory::Exact2 { n, p, .. } | Theory::Exact3 { n, p, .. } => {
                let s = *n as f64 * p;
                Ok((-s, s))
            }
            Theory::Asymptotic { spec, p } => {
                let iv = spec.support_intervals()?;
                let lo = iv.iter().map(|i| i.0).fold(f64::INFINITY, f64::min);
                let hi = iv.iter().map(|i| i.1).fold(f64::NEG_INFINITY, f64::max);
                Ok((p * lo, p * hi))
            }
        }
    }

    /// Half the distance from 0 to the support when an atom sits there.
    pub fn atom_threshold(&self) -> CliResult<Option<f64>> {
        match self {
            Theory::Asymptotic { spec, p } if spec.c > 2.0 => Ok(spec.x_minus()?.filter(|&x| x > 0.0).map(|x| 0.5 * p * x)),
            _ => Ok(None),
        }
    }

    /// Mean of the density over each bin.
    pub fn bin_averages(&self, edges: &[f64]) -> CliResult<Vec<f64>> {
        edges
            .windows(2)
            .map(|w| {
                let mut failure = None;
                let f = |x: f64| match self.density(x) {
                    Ok(v) => v,
                    Err(e) => {
                        failure.get_or_insert(e);
                        0.0
                    }
                };
                let mean = match integrate(f, w[0], w[1], Tolerance::new(1e-10, 1e-8)) {
                    Ok(r) => r.value / (w[1] - w[0]),
                    // integrable spikes: fall back to a fine midpoint rule
                    Err(_) => {
                        let k = 256;
                        let h = (w[1] - w[0]) / k as f64;
                        (0..k).map(|i| self.density(w[0] + h * (i as f64 + 0.5))).sum::<rmtdiff::Result<f64>>()? / k as f64
                    }
                };
                match failure {
                    Some(e) => Err(e.into()),
                    None => Ok(mean),
                }
            })
            .collect()
    }
}

/// Histogram of one run next to its theory curve.
#[derive(Debug, Clone, PartialEq)]
pub struct HistRun {
    pub histogram: HistogramResult,
    pub theory: Vec<f64>,
    pub theory_label: String,
    pub atom_threshold: Option<f64>,
    pub l1: f64,
    pub params: EnsembleParams,
    pub workers: usize,
}

/// Default histogram range: the theory support padded by 10% on each side.
pub fn default_range(theory: &Theory) -> CliResult<Grid> {
    let (lo, hi) = theory.support()?;
    let pad = 0.1 * (hi - lo);
    Grid::new(lo - pad, hi + pad, 2)
}

pub fn run_hist(cfg: &RunConfig) -> CliResult<HistRun> {
    cfg.validate()?;
    let theory = Theory::for_params(&cfg.params)?;
    hist_against(cfg, &theory)
}

pub fn hist_against(cfg: &RunConfig, theory: &Theory) -> CliResult<HistRun> {
    cfg.validate()?;
    let range = match cfg.grid {
        Some(g) => g,
        None => default_range(theory)?,
    };
    let atom_threshold = theory.atom_threshold()?;
    let spectra = sample_spectra(&cfg.params, cfg.samples, cfg.workers)?;
    let histogram = HistogramResult::from_spectra(&spectra, range.lo, range.hi, cfg.bins, atom_threshold);
    let curve = theory.bin_averages(&histogram.bin_edges)?;
    let l1 = histogram.l1_distance(&curve);
    Ok(HistRun {
        histogram,
        theory: curve,
        theory_label: theory.label().to_string(),
        atom_threshold,
        l1,
        params: cfg.params,
        workers: cfg.workers,
    })
}

impl HistRun {
    /// `bin_lo,bin_hi,empirical,theory` rows and one metadata comment line.
    pub fn to_csv(&self) -> String {
        let h = &self.histogram;
        let mut s = String::from("bin_lo,bin_hi,empirical,theory\n");
        for i in 0..h.bins() {
            let _ = writeln!(
                s,
                "{:.16e},{:.16e},{:.16e},{:.16e}",
                h.bin_edges[i],
                h.bin_edges[i + 1],
                h.normalized_density[i],
                self.theory[i]
            );
        }
        let p = &self.params;
        let threshold = self.atom_threshold.map_or("none".to_string(), |t| format!("{t:.16e}"));
        let _ = writeln!(
            s,
            "# n={} m={} p={} q={} seed={} workers={} samples={} bins={} eigenvalues={} theory={} \
             atom_threshold={threshold} atom_fraction={:.16e} in_range_fraction={:.16e} l1={:.16e}",
            p.n_small,
            p.m_large,
            p.weight_p,
            p.weight_q,
            p.seed,
            self.workers,
            h.total_samples,
            h.bins(),
            h.total_eigenvalues,
            self.theory_label,
            h.atom_fraction(),
            h.in_range_fraction(),
            self.l1
        );
        s
    }
}

/// Numeric columns of a histogram CSV: `(bin_lo, bin_hi, empirical, theory)`.
pub fn parse_hist_csv(text: &str) -> CliResult<[Vec<f64>; 4]> {
    let bad = |m: &str| CliError::Usage(format!("malformed histogram csv: {m}"));
    let mut lines = text.lines();
    if lines.next() != Some("bin_lo,bin_hi,empirical,theory") {
        return Err(bad("header"));
    }
    let mut cols: [Vec<f64>; 4] = Default::default();
    for line in lines.filter(|l| !l.starts_with('#')) {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(bad(line));
        }
        for (col, f) in cols.iter_mut().zip(fields) {
            col.push(f.parse().map_err(|_| bad(f))?);
        }
    }
    Ok(cols)
}
