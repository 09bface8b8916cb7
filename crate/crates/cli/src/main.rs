use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rmtdiff::asym::{aed_on_grid, AedSpec};
use rmtdiff::finite::build_psi_poly;
use rmtdiff::linalg::EnsembleParams;
use rmtdiff::moments::{
    absolute_moment, distance_to_mixed_asymptotic, moment_via_quadrature, operator_norm_asymptotic,
    trace_distance_asymptotic, MomentQuery,
};
use rmtdiff_cli::config::{Command, Format, Grid, RunConfig, DEFAULT_BINS, DEFAULT_WORKERS};
use rmtdiff_cli::figures::{run_fig, write_file, FigOptions, FigureId};
use rmtdiff_cli::mc::{mean_stderr, parallel_draws, sample_spectra};
use rmtdiff_cli::verify::{run_verify, Level};
use rmtdiff_cli::{run_hist, svg, CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "rmtdiff", version, about = "Spectra of differences of random reduced density matrices")]
struct Cli {
    #[command(subcommand)]
    command: Sub,

    /// Subsystem dimension N.
    #[arg(long, global = true, default_value_t = 80)]
    n: usize,
    /// Environment dimension M.
    #[arg(long, global = true, default_value_t = 50)]
    m: usize,
    /// Weight p of rho_1.
    #[arg(long, global = true, default_value_t = 1.0)]
    p: f64,
    /// Weight q of rho_2.
    #[arg(long, global = true, default_value_t = 1.0)]
    q: f64,
    /// Number of random draws (command-specific default).
    #[arg(long, global = true)]
    samples: Option<usize>,
    #[arg(long, global = true, env = "RMTDIFF_SEED", default_value_t = 1)]
    seed: u64,
    #[arg(long, global = true, default_value_t = DEFAULT_BINS)]
    bins: usize,
    /// Grid as lo:hi:count.
    #[arg(long, global = true, value_parser = parse_grid, allow_hyphen_values = true)]
    grid: Option<Grid>,
    #[arg(long, global = true, default_value_t = DEFAULT_WORKERS)]
    workers: usize,
    /// Output file (directory for `fig`); stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Rescaled eigenvalues x = N lambda of each draw.
    Sample,
    /// Histogram of pooled eigenvalues against theory.
    Hist,
    /// Asymptotic density on a grid.
    Aed {
        /// Overrides c = N / M.
        #[arg(long)]
        c: Option<f64>,
        /// Overrides eta = q / p.
        #[arg(long)]
        eta: Option<f64>,
    },
    /// Absolute moments m_z for z on the grid.
    Moments {
        #[arg(long)]
        c: Option<f64>,
    },
    /// Trace distance, operator norm and distance to I/N.
    Distance,
    /// Data and SVG for one figure.
    Fig { id: FigureId },
    /// Acceptance suite.
    Verify {
        #[arg(long, value_enum, default_value_t = Level::Full)]
        level: Level,
    },
    /// Piecewise polynomial of the diagonal-element law.
    Psi,
}

fn parse_grid(s: &str) -> Result<Grid, String> {
    s.parse().map_err(|e: CliError| e.to_string())
}

impl Cli {
    fn params(&self) -> CliResult<EnsembleParams> {
        Ok(EnsembleParams::new(self.n, self.m, self.p, self.q, self.seed)?)
    }

    fn config(&self, command: Command, default_samples: usize) -> CliResult<RunConfig> {
        let cfg = RunConfig {
            command,
            params: self.params()?,
            samples: self.samples.unwrap_or(default_samples),
            bins: self.bins,
            grid: self.grid,
            output_path: self.out.clone(),
            workers: self.workers,
            format: self.format,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn emit(out: Option<&Path>, body: &str) -> CliResult<()> {
    match out {
        Some(path) => write_file(path, body),
        None => std::io::stdout().write_all(body.as_bytes()).map_err(|source| CliError::Io {
            path: PathBuf::from("<stdout>"),
            source,
        }),
    }
}

fn run(cli: &Cli) -> CliResult<bool> {
    match &cli.command {
        Sub::Sample => {
            let cfg = cli.config(Command::Sample, 10)?;
            let spectra = sample_spectra(&cfg.params, cfg.samples, cfg.workers)?;
            let mut s = String::from("sample,x\n");
            for (i, spec) in spectra.iter().enumerate() {
                for x in &spec.eigenvalues {
                    let _ = writeln!(s, "{i},{x:.16e}");
                }
            }
            emit(cfg.output_path.as_deref(), &s)?;
        }
        Sub::Hist => {
            let cfg = cli.config(Command::Hist, 3000)?;
            let run = run_hist(&cfg)?;
            log::info!("L1 distance to {} theory: {}", run.theory_label, run.l1);
            let body = match cfg.format {
                Format::Csv => run.to_csv(),
                Format::Svg => {
                    let h = &run.histogram;
                    let title = format!("N={}, M={}: L1 = {:.4}", cli.n, cli.m, run.l1);
                    svg::histogram(&h.bin_edges, &h.normalized_density, &run.theory, &title)
                }
            };
            emit(cfg.output_path.as_deref(), &body)?;
        }
        Sub::Aed { c, eta } => {
            let params = cli.params()?;
            let spec = AedSpec::new(c.unwrap_or(params.ratio()), eta.unwrap_or(params.eta()))?;
            let grid = match cli.grid {
                Some(g) => g,
                None => {
                    let xp = spec.x_plus()?;
                    Grid::new(-1.1 * xp, 1.1 * xp, 441)?
                }
            };
            let result = aed_on_grid(spec, &grid.points())?;
            let body = match cli.format {
                Format::Csv => result.to_csv(),
                Format::Svg => svg::lines(
                    &[(&result.grid, &result.density)],
                    None,
                    &format!("c = {}, eta = {}, atom = {:.4}", spec.c, spec.eta, result.atom_weight),
                ),
            };
            emit(cli.out.as_deref(), &body)?;
        }
        Sub::Moments { c } => {
            let params = cli.params()?;
            let c = c.unwrap_or(params.ratio());
            let grid = cli.grid.unwrap_or(Grid::new(0.5, 4.0, 8)?);
            let mc = match cli.samples {
                Some(k) if c == params.ratio() => {
                    let cfg = cli.config(Command::Moments, k)?;
                    Some(sample_spectra(&cfg.params, cfg.samples, cfg.workers)?)
                }
                _ => None,
            };
            let mut s = String::from("z,closed_form,quadrature,monte_carlo\n");
            for z in grid.points() {
                let closed = if params.eta() == 1.0 {
                    absolute_moment(&MomentQuery::real(z, c)?)?.re
                } else {
                    f64::NAN
                };
                let quad = moment_via_quadrature(z, c, params.eta())?;
                let empirical = mc.as_ref().map_or(f64::NAN, |spectra| {
                    let per: Vec<f64> = spectra
                        .iter()
                        .map(|sp| sp.eigenvalues.iter().map(|x| (x / params.weight_p).abs().powf(z)).sum::<f64>() / sp.len() as f64)
                        .collect();
                    mean_stderr(&per).0
                });
                let _ = writeln!(s, "{z:.16e},{closed:.16e},{quad:.16e},{empirical:.16e}");
            }
            emit(cli.out.as_deref(), &s)?;
        }
        Sub::Distance => {
            let cfg = cli.config(Command::Distance, 500)?;
            let p = &cfg.params;
            if !p.is_symmetric() || p.weight_p != 1.0 {
                return Err(CliError::Usage("distance needs p = q = 1".into()));
            }
            let n = p.n_small as f64;
            let c = p.ratio();
            let spectra = sample_spectra(p, cfg.samples, cfg.workers)?;
            let td: Vec<f64> = spectra.iter().map(|s| s.half_trace_norm() / n).collect();
            let op: Vec<f64> = spectra.iter().map(|s| s.max_abs() / n).collect();
            let mixed: Vec<f64> = parallel_draws(p.seed ^ 0x9e37_79b9, cfg.samples, cfg.workers, |rng| {
                let rho = rmtdiff::linalg::sample_ftwl(p.n_small, p.m_large, rng)?;
                let spec = rmtdiff::linalg::hermitian_eigenvalues(rho.as_matrix())?;
                Ok(0.5 * spec.eigenvalues.iter().map(|l| (l - 1.0 / n).abs()).sum::<f64>())
            })?;
            let mut s = String::from("quantity,monte_carlo,stderr,asymptotic\n");
            for (name, values, theory) in [
                ("trace_distance", &td, trace_distance_asymptotic(c)?),
                ("operator_norm", &op, operator_norm_asymptotic(c, p.n_small)?),
                ("distance_to_mixed", &mixed, distance_to_mixed_asymptotic(c)?),
            ] {
                let (mean, err) = mean_stderr(values);
                let _ = writeln!(s, "{name},{mean:.16e},{err:.16e},{theory:.16e}");
            }
            emit(cfg.output_path.as_deref(), &s)?;
        }
        Sub::Fig { id } => {
            let opts = FigOptions {
                out_dir: cli.out.clone().unwrap_or_else(|| PathBuf::from("figures")),
                seed: cli.seed,
                workers: cli.workers,
                samples: cli.samples,
                bins: cli.bins,
            };
            for path in run_fig(*id, &opts)? {
                println!("{}", path.display());
            }
        }
        Sub::Verify { level } => {
            let report = run_verify(*level);
            let mut s = String::new();
            for c in &report {
                let _ = writeln!(s, "{}", c.report_line());
                for d in &c.details {
                    log::info!("{}: {d}", c.id);
                }
            }
            if let Some(path) = &cli.out {
                write_file(path, &s)?;
            }
            print!("{s}");
            return Ok(report.iter().all(|c| c.passed));
        }
        Sub::Psi => {
            let psi = build_psi_poly(cli.n, cli.m)?;
            emit(cli.out.as_deref(), &psi.dump_csv()?)?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
