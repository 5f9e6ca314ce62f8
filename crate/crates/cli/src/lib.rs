//! Command-line front end: single-point evaluation, grid sweeps to CSV, gap
//! audits and coded-multicast delivery runs.

pub mod format;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use fog_ndt::{
    achievable_ndt, achievable_plan, gap_audit, lower_bound, regime_of, simulate_delivery,
    BoundBreakdown, DeliveryPlan, Ndt, NetworkConfig, Quantity, Regime, Scalar, SchemeId,
    SweepRow, SweepSpec, ValueSpec,
};

use crate::format::{format_ndt, format_number};

pub const EXIT_OK: i32 = 0;
pub const EXIT_AUDIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_RECONSTRUCTION: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Model(#[from] fog_ndt::Error),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Model(_) => EXIT_USAGE,
            CliError::Io { .. } => EXIT_IO,
        }
    }
}

fn io_err(context: impl Into<String>) -> impl FnOnce(io::Error) -> CliError {
    let context = context.into();
    move |source| CliError::Io { context, source }
}

#[derive(Debug, Parser)]
#[command(name = "fog-ndt", version, about = "Normalized delivery time of fog RAN delivery schemes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one operating point and print it as JSON.
    Eval(EvalArgs),
    /// Evaluate a parameter grid and write one CSV row per point.
    Sweep(SweepArgs),
    /// Check the achievable/lower-bound ratio over a grid.
    Audit(GridArgs),
    /// Run the coded-multicast fronthaul protocol on random files.
    Simulate(SimulateArgs),
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long = "M")]
    pub m: usize,
    #[arg(long = "K")]
    pub k: usize,
    /// Library size (defaults to K).
    #[arg(long = "N")]
    pub n: Option<usize>,
    /// Cache fraction: a decimal, a fraction like 1/3, or the literal 1/M.
    #[arg(long)]
    pub mu: String,
    #[arg(long)]
    pub r: f64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Preset {
    /// M,K in 2..=6, mu 0..1 step 0.05, r 0.1..2min(M,K) step 0.1.
    Standard,
    /// M=3, K in {2,3,4}, mu=1/M, r 0.25..4 step 0.25.
    Rate,
    /// M=2, K in {2,3,4}, r=1, mu 0..1 step 0.05.
    Cache,
}

#[derive(Debug, Default, Args)]
pub struct GridArgs {
    /// JSON file with M_values, K_values, mu_values, r_values, quantities.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    /// Edge-node counts, e.g. `3` or `2,3,4` or `2:6`.
    #[arg(long = "M")]
    pub m: Option<String>,
    /// User counts, same syntax as --M.
    #[arg(long = "K")]
    pub k: Option<String>,
    /// Library size for every point (defaults to K).
    #[arg(long = "N")]
    pub n: Option<usize>,
    /// Cache fractions: comma list of values (`0.5`, `1/M`) or `start:stop:step`.
    #[arg(long)]
    pub mu: Option<String>,
    /// Fronthaul rates, same syntax as --mu; `2min` means 2*min(M,K).
    #[arg(long)]
    pub r: Option<String>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    /// Append pipelined NDTs of ZF, IA, CA and CC at their own cache points.
    #[arg(long)]
    pub per_scheme: bool,
    /// Output CSV path; stdout when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long = "M")]
    pub m: usize,
    #[arg(long = "K")]
    pub k: usize,
    #[arg(long = "N")]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 1.0)]
    pub r: f64,
    /// File size in bits; padded up to a multiple of M.
    #[arg(long = "L", default_value_t = 1024)]
    pub l: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Requested file per user (1-based), e.g. `1,1,2`; random distinct files when omitted.
    #[arg(long, value_delimiter = ',')]
    pub demand: Option<Vec<usize>>,
}

/// Runs a parsed command, writing its output to `out`, and returns the exit
/// code.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Eval(args) => cmd_eval(&args, out),
        Command::Sweep(args) => cmd_sweep(&args, out),
        Command::Audit(args) => cmd_audit(&args, out),
        Command::Simulate(args) => cmd_simulate(&args, out),
    }
}

#[derive(Serialize)]
struct EvalOutput {
    point: NetworkConfig,
    regime: Regime,
    achievable: Ndt,
    plan: DeliveryPlan,
    lower_bound: BoundBreakdown,
    gap: Ndt,
}

fn cmd_eval(args: &EvalArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let mu = args.mu.parse::<Scalar>()?.resolve(args.m, args.k);
    let cfg = NetworkConfig::new(args.m, args.k, args.n.unwrap_or(args.k), mu, args.r)?;
    let achievable = achievable_ndt(&cfg)?;
    let bound = lower_bound(&cfg)?;
    let gap = if achievable.is_finite() {
        Ndt::ratio(achievable.get(), bound.best.get())
    } else {
        Ndt::INFINITY
    };
    let output = EvalOutput {
        point: cfg,
        regime: regime_of(&cfg),
        achievable,
        plan: achievable_plan(&cfg)?,
        lower_bound: bound,
        gap,
    };
    write_json(out, &output)?;
    Ok(EXIT_OK)
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("serializable output");
    writeln!(out, "{text}").map_err(io_err("writing output"))
}

fn parse_counts(flag: &str, text: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Usage(format!("--{flag}: cannot parse {text:?}"));
    let mut values = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match item.split_once(':') {
            Some((lo, hi)) => {
                let lo: usize = lo.trim().parse().map_err(|_| bad())?;
                let hi: usize = hi.trim().parse().map_err(|_| bad())?;
                if hi < lo {
                    return Err(bad());
                }
                values.extend(lo..=hi);
            }
            None => values.push(item.parse().map_err(|_| bad())?),
        }
    }
    Ok(values)
}

fn parse_values(text: &str) -> Result<Vec<ValueSpec>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<ValueSpec>().map_err(CliError::from))
        .collect()
}

impl GridArgs {
    fn is_empty(&self) -> bool {
        self.config.is_none()
            && self.preset.is_none()
            && self.m.is_none()
            && self.k.is_none()
            && self.mu.is_none()
            && self.r.is_none()
    }

    /// Preset or config file first, then individual flags override fields.
    pub fn to_spec(&self) -> Result<SweepSpec, CliError> {
        let mut spec = match (&self.config, self.preset) {
            (Some(_), Some(_)) => {
                return Err(CliError::Usage("--config and --preset are exclusive".into()))
            }
            (Some(path), None) => {
                let text = fs::read_to_string(path)
                    .map_err(io_err(format!("reading {}", path.display())))?;
                serde_json::from_str(&text).map_err(|e| {
                    CliError::Usage(format!("invalid sweep config {}: {e}", path.display()))
                })?
            }
            (None, Some(Preset::Standard)) => SweepSpec::standard_grid(),
            (None, Some(Preset::Rate)) => SweepSpec::rate_sweep_figure(),
            (None, Some(Preset::Cache)) => SweepSpec::cache_sweep_figure(),
            (None, None) => SweepSpec::default(),
        };
        if let Some(m) = &self.m {
            spec.m_values = parse_counts("M", m)?;
        }
        if let Some(k) = &self.k {
            spec.k_values = parse_counts("K", k)?;
        }
        if let Some(mu) = &self.mu {
            spec.mu_values = parse_values(mu)?;
        }
        if let Some(r) = &self.r {
            spec.r_values = parse_values(r)?;
        }
        if self.n.is_some() {
            spec.n_files = self.n;
        }
        Ok(spec)
    }
}

pub const CSV_HEADER: [&str; 8] = ["M", "K", "mu", "r", "regime", "achievable", "lower_bound", "gap"];
pub const PER_SCHEME_HEADER: [&str; 4] = ["pl_ZF", "pl_IA", "pl_CA", "pl_CC"];

/// Writes sweep rows as CSV, numbers with 12 significant digits.
pub fn write_csv<W: Write>(rows: &[SweepRow], per_scheme: bool, writer: W) -> csv::Result<()> {
    let mut csv = csv::Writer::from_writer(writer);
    let mut header: Vec<&str> = CSV_HEADER.to_vec();
    if per_scheme {
        header.extend(PER_SCHEME_HEADER);
    }
    csv.write_record(&header)?;
    for row in rows {
        let mut record = vec![
            row.m.to_string(),
            row.k.to_string(),
            format_number(row.mu),
            format_number(row.r),
            row.regime.label().to_owned(),
            format_ndt(row.achievable),
            format_ndt(row.lower_bound),
            format_number(row.gap),
        ];
        if per_scheme {
            let schemes = row.per_scheme.expect("per-scheme values requested");
            record.extend(
                [
                    SchemeId::ZeroForcing,
                    SchemeId::InterferenceAlignment,
                    SchemeId::CloudAided,
                    SchemeId::CodedMulticast,
                ]
                .map(|s| format_ndt(schemes.get(s))),
            );
        }
        csv.write_record(&record)?;
    }
    csv.flush()?;
    Ok(())
}

fn csv_error(context: &str, err: csv::Error) -> CliError {
    match err.into_kind() {
        csv::ErrorKind::Io(source) => CliError::Io {
            context: context.to_owned(),
            source,
        },
        other => CliError::Usage(format!("{context}: {other:?}")),
    }
}

fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let mut spec = args.grid.to_spec()?;
    if args.per_scheme && !spec.wants(Quantity::PerScheme) {
        spec.quantities.push(Quantity::PerScheme);
    }
    let per_scheme = spec.wants(Quantity::PerScheme);
    let rows = spec.rows()?;

    match &args.output {
        Some(path) => {
            let context = format!("writing {}", path.display());
            let file = fs::File::create(path).map_err(io_err(context.clone()))?;
            write_csv(&rows, per_scheme, io::BufWriter::new(file))
                .map_err(|e| csv_error(&context, e))?;
        }
        None => write_csv(&rows, per_scheme, out).map_err(|e| csv_error("writing output", e))?,
    }
    Ok(EXIT_OK)
}

fn cmd_audit(args: &GridArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let spec = if args.is_empty() {
        SweepSpec::standard_grid()
    } else {
        args.to_spec()?
    };
    let report = gap_audit(&spec)?;
    write_json(out, &report)?;
    Ok(if report.passed() {
        EXIT_OK
    } else {
        EXIT_AUDIT_FAILED
    })
}

fn cmd_simulate(args: &SimulateArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let n = args.n.unwrap_or(args.k);
    let cfg = NetworkConfig::new(args.m, args.k, n, 1.0 / args.m as f64, args.r)?;
    let report = simulate_delivery(&cfg, args.l, args.demand.as_deref(), args.seed)?;
    write_json(out, &report)?;
    Ok(if report.all_reconstructed() {
        EXIT_OK
    } else {
        EXIT_RECONSTRUCTION
    })
}
