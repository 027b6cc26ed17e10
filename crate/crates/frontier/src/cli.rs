//! Command-line front end.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use frontier_core::estimators::{
    confidence_band, estimate_frontier, estimate_frontier_corrected, EstimatorConfig, PointEstimate,
    Sample,
};
use frontier_core::kernels::{KernelFamily, KernelSpec};
use frontier_core::simulation::{Covariate, Frontier, FrontierModel};

use crate::config::{parse_experiment_config, parse_list};
use crate::experiment::{
    coverage_study, rule_bandwidth, rule_power, run_experiment, EstimatorKind, ExperimentConfig,
    DEFAULT_GRID_SIZE,
};
use crate::io::{read_sample, write_sample};
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "frontier", version, about = "Power-kernel frontier estimation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Estimate the frontier of an `x,y` CSV on a grid.
    Estimate(EstimateArgs),
    /// Draw a sample from a simulation design.
    Simulate(SimulateArgs),
    /// Run the replicated L1 comparison.
    Experiment(ExperimentArgs),
    /// Empirical coverage of the pointwise confidence band.
    Coverage(CoverageArgs),
}

#[derive(Debug, Args)]
struct EstimateArgs {
    /// Input CSV (default: stdin).
    #[arg(value_name = "INPUT")]
    input_pos: Option<PathBuf>,
    #[arg(long, short, conflicts_with = "input_pos")]
    input: Option<PathBuf>,
    /// Output CSV (default: stdout).
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Power exponent (default: sqrt(n)).
    #[arg(long)]
    p: Option<f64>,
    /// Bandwidth (default: 4 * sd(x) / sqrt(n)).
    #[arg(long)]
    h: Option<f64>,
    #[arg(long, default_value = "cosine2", value_parser = parse_kernel)]
    kernel: KernelFamily,
    /// Tail index for the corrected estimator.
    #[arg(long)]
    gamma: Option<f64>,
    /// Number of grid points.
    #[arg(long, default_value_t = DEFAULT_GRID_SIZE)]
    grid: usize,
    /// Grid start (default: smallest x).
    #[arg(long)]
    grid_min: Option<f64>,
    /// Grid end (default: largest x).
    #[arg(long)]
    grid_max: Option<f64>,
    /// Confidence level for pointwise bands.
    #[arg(long, value_name = "LEVEL")]
    ci: Option<f64>,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[arg(long, default_value = "g2", value_parser = parse_frontier)]
    frontier: Frontier,
    #[arg(long, default_value = "uniform", value_parser = parse_covariate)]
    covariate: Covariate,
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ExperimentArgs {
    /// Flat key=value configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated sample sizes.
    #[arg(long)]
    n_values: Option<String>,
    /// Comma-separated tail indices.
    #[arg(long)]
    gamma_values: Option<String>,
    /// Comma-separated estimator names.
    #[arg(long)]
    estimators: Option<String>,
    #[arg(long, value_parser = parse_frontier)]
    frontier: Option<Frontier>,
    #[arg(long, value_parser = parse_covariate)]
    covariate: Option<Covariate>,
    #[arg(long, value_parser = parse_kernel)]
    kernel: Option<KernelFamily>,
    #[arg(long)]
    grid_size: Option<usize>,
    /// Report CSV (default: `experiment.csv`).
    #[arg(long, short, default_value = "experiment.csv")]
    out: PathBuf,
    /// Per-replication errors CSV.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CoverageArgs {
    #[arg(long, default_value = "g2", value_parser = parse_frontier)]
    frontier: Frontier,
    #[arg(long, default_value = "uniform", value_parser = parse_covariate)]
    covariate: Covariate,
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long, default_value_t = 0.95)]
    level: f64,
    #[arg(long, default_value_t = 200)]
    m: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated evaluation points.
    #[arg(long, default_value = "0.3,0.5,0.7")]
    points: String,
    #[arg(long, default_value = "cosine2", value_parser = parse_kernel)]
    kernel: KernelFamily,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

fn parse_kernel(s: &str) -> std::result::Result<KernelFamily, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_frontier(s: &str) -> std::result::Result<Frontier, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_covariate(s: &str) -> std::result::Result<Covariate, String> {
    s.parse().map_err(|e| format!("{e}"))
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let result = match cli.command {
        Command::Estimate(a) => cmd_estimate(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Experiment(a) => cmd_experiment(a),
        Command::Coverage(a) => cmd_coverage(a),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("frontier: error: {e}");
            e.exit_code()
        }
    }
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn load_sample(path: Option<&Path>) -> Result<Sample> {
    match path {
        Some(p) => read_sample(File::open(p)?),
        None => {
            let mut buf = Vec::new();
            io::stdin().lock().read_to_end(&mut buf)?;
            read_sample(buf.as_slice())
        }
    }
}

fn usage(message: String) -> Error {
    Error::InvalidConfig(message)
}

fn evaluation_grid(sample: &Sample, size: usize, lo: Option<f64>, hi: Option<f64>) -> Result<Vec<f64>> {
    if size == 0 {
        return Err(usage("--grid must be at least 1".into()));
    }
    let lo = lo.unwrap_or_else(|| sample.axis(0).fold(f64::INFINITY, f64::min));
    let hi = hi.unwrap_or_else(|| sample.axis(0).fold(f64::NEG_INFINITY, f64::max));
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(usage(format!("invalid grid range [{lo}, {hi}]")));
    }
    if size == 1 || lo == hi {
        return Ok(vec![lo]);
    }
    let step = (hi - lo) / (size - 1) as f64;
    Ok((0..size)
        .map(|i| if i == size - 1 { hi } else { lo + step * i as f64 })
        .collect())
}

fn cmd_estimate(a: EstimateArgs) -> Result<()> {
    let input = a.input.as_deref().or(a.input_pos.as_deref());
    let sample = load_sample(input)?;
    if sample.dimension() != 1 {
        return Err(usage("estimate expects univariate x".into()));
    }
    let n = sample.len();
    let h = match a.h {
        Some(h) => h,
        None => {
            let h = rule_bandwidth(&sample)?;
            eprintln!("frontier: h = {h} (rule 4 sd(x) / sqrt(n))");
            h
        }
    };
    let p = match a.p {
        Some(p) => p,
        None => {
            let p = rule_power(n);
            eprintln!("frontier: p = {p} (rule sqrt(n))");
            p
        }
    };
    eprintln!("frontier: n = {n}, kernel = {}", a.kernel);
    let cfg = EstimatorConfig::new(p, h, KernelSpec::new(a.kernel, 1)?)?;
    if let Some(level) = a.ci {
        if !(level > 0.0 && level < 1.0) {
            return Err(usage(format!("--ci must lie in (0, 1), got {level}")));
        }
    }
    let grid = evaluation_grid(&sample, a.grid, a.grid_min, a.grid_max)?;

    let mut out = csv::Writer::from_writer(output(a.out.as_deref())?);
    let mut header = vec!["x", "ghat", "defined"];
    if a.ci.is_some() {
        header.extend(["ci_lo", "ci_hi"]);
    }
    out.write_record(&header).map_err(csv_error)?;
    let mut any_defined = false;
    for &x in &grid {
        let est: PointEstimate = match a.gamma {
            Some(gamma) => estimate_frontier_corrected(&sample, &cfg, gamma, &[x])?,
            None => estimate_frontier(&sample, &cfg, &[x])?,
        };
        any_defined |= est.is_defined();
        let mut row = vec![x.to_string(), est.raw_value().to_string(), est.is_defined().to_string()];
        if let Some(level) = a.ci {
            let (lo, hi) = if est.is_defined() {
                let band = confidence_band(&sample, &cfg, &[x], level)?;
                (band.lower(), band.upper())
            } else {
                (f64::NAN, f64::NAN)
            };
            row.push(lo.to_string());
            row.push(hi.to_string());
        }
        out.write_record(&row).map_err(csv_error)?;
    }
    out.flush()?;
    if !any_defined {
        return Err(Error::AllUndefined);
    }
    Ok(())
}

fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Csv {
            line: 0,
            message: format!("{other:?}"),
        },
    }
}

fn cmd_simulate(a: SimulateArgs) -> Result<()> {
    let model = FrontierModel::new(a.frontier, a.gamma, a.covariate, a.seed)?;
    let sample = model.generate_sample(a.n)?;
    write_sample(&sample, output(a.out.as_deref())?)
}

fn cmd_experiment(a: ExperimentArgs) -> Result<()> {
    let mut cfg = match &a.config {
        Some(path) => parse_experiment_config(&std::fs::read_to_string(path)?)?,
        None => ExperimentConfig::default(),
    };
    if let Some(m) = a.m {
        cfg.m = m;
    }
    if let Some(seed) = a.seed {
        cfg.base_seed = seed;
    }
    if let Some(v) = &a.n_values {
        cfg.n_values = parse_list(v).map_err(usage)?;
    }
    if let Some(v) = &a.gamma_values {
        cfg.gamma_values = parse_list(v).map_err(usage)?;
    }
    if let Some(v) = &a.estimators {
        cfg.estimators = v
            .split(',')
            .map(|s| s.trim().parse::<EstimatorKind>())
            .collect::<Result<_>>()?;
    }
    if let Some(f) = a.frontier {
        cfg.frontier = f;
    }
    if let Some(c) = a.covariate {
        cfg.covariate = c;
    }
    if let Some(k) = a.kernel {
        cfg.kernel = k;
    }
    if let Some(g) = a.grid_size {
        cfg.grid_size = g;
    }
    cfg.validate()?;
    eprintln!(
        "frontier: m = {}, seed = {}, frontier = {}, covariate = {}, kernel = {}, grid = {}",
        cfg.m,
        cfg.base_seed,
        cfg.frontier.name(),
        cfg.covariate.name(),
        cfg.kernel,
        cfg.grid_size
    );
    eprintln!("frontier: h = 4 sd(x) / sqrt(n), p = sqrt(n)");

    let report = run_experiment(&cfg)?;
    for (cell, message) in report.failures() {
        eprintln!(
            "frontier: cell {} n={} gamma={} failed: {message}",
            cell.estimator, cell.n, cell.gamma
        );
    }
    report.write_csv(BufWriter::new(File::create(&a.out)?))?;
    if let Some(trace) = &a.trace {
        report.write_trace_csv(BufWriter::new(File::create(trace)?))?;
    }
    print!("{}", report.render_table());
    if report.all_failed() {
        return Err(usage("every cell failed".into()));
    }
    Ok(())
}

fn cmd_coverage(a: CoverageArgs) -> Result<()> {
    let points: Vec<f64> = parse_list(&a.points).map_err(usage)?;
    let model = FrontierModel::new(a.frontier, 1.0, a.covariate, a.seed)?;
    eprintln!("frontier: gamma = 1, h = 4 sd(x) / sqrt(n), p = sqrt(n)");
    let study = coverage_study(&model, a.n, a.level, a.m, &points, a.kernel)?;
    let mut out = csv::Writer::from_writer(output(a.out.as_deref())?);
    out.write_record(["x", "truth", "coverage", "covered", "valid", "undefined"])
        .map_err(csv_error)?;
    for pt in &study.points {
        out.write_record([
            pt.x.to_string(),
            pt.truth.to_string(),
            pt.coverage.to_string(),
            pt.covered.to_string(),
            pt.valid.to_string(),
            pt.undefined.to_string(),
        ])
        .map_err(csv_error)?;
    }
    out.flush()?;
    Ok(())
}
