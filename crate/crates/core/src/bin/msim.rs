//! `msim` command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 data or configuration error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use msim::apps::{prune_select, sorter_dijkstra, Graph, PruneRequest};
use msim::bench::{gen_dataset, load_dataset, run_bench, BenchConfig, DatasetKind, DatasetSpec};
use msim::crossarray::{StrategyConfig, StrategyKind};
use msim::datatypes::{encode, write_dataset, Direction, FormatKind, NumberFormat, Value};
use msim::device::{monte_carlo, DeviceModel};
use msim::engine::{trace::to_jsonl, RunMetrics, SortOptions};
use msim::Error;

#[derive(Parser)]
#[command(name = "msim", version, about = "Memristor sort-in-memory simulator")]
struct Cli {
    /// Seed for every random choice made by the command.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// JSON config: strategy config for sort/dijkstra/prune, grid config for bench.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated dataset file.
    Gen {
        #[arg(long, default_value = "random")]
        kind: String,
        #[arg(long, default_value_t = 8)]
        width: u32,
        #[arg(long, default_value_t = 256)]
        count: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sort one dataset file with one strategy.
    Sort {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        strategy: StrategyArgs,
        #[arg(long, default_value = "min")]
        direction: String,
        /// Write a JSON-lines cycle trace here.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a benchmark grid.
    Bench {
        /// Report path; `.csv` or `.json` picks the format.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        datasets: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        widths: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        strategies: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        ks: Vec<usize>,
        #[arg(long)]
        reps: Option<usize>,
    },
    /// Shortest path with sorter-backed neighbour selection.
    Dijkstra {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        start: usize,
        #[arg(long)]
        end: usize,
        #[command(flatten)]
        strategy: StrategyArgs,
    },
    /// Select the smallest-magnitude weights.
    Prune {
        #[arg(long)]
        weights: PathBuf,
        #[arg(long)]
        prune_rate: f64,
        #[arg(long, default_value_t = 0.0)]
        ber: f64,
        #[command(flatten)]
        strategy: StrategyArgs,
    },
    /// Write-verify Monte Carlo of a device model.
    Device {
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long, default_value_t = 10_000)]
        cells: usize,
    },
}

#[derive(Args)]
struct StrategyArgs {
    #[arg(long)]
    strategy: Option<String>,
    #[arg(long)]
    k: Option<usize>,
}

enum CliError {
    Usage(String),
    Data(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Data(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Data(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(Error::from)?;
    Ok(serde_json::from_str(&text).map_err(Error::from)?)
}

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(Error::from)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(Error::from)?;
    s.push('\n');
    Ok(s)
}

fn strategy(config: Option<&Path>, args: &StrategyArgs) -> CliResult<StrategyConfig> {
    let mut cfg = match config {
        Some(p) => read_json::<StrategyConfig>(p)?,
        None => StrategyConfig::basic(2),
    };
    if let Some(s) = &args.strategy {
        cfg.strategy = s.parse::<StrategyKind>().or_else(|e| usage(e.to_string()))?;
    }
    if let Some(k) = args.k {
        cfg.k = k;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: Cli) -> CliResult<()> {
    let config = cli.config.as_deref();
    match cli.command {
        Command::Gen { kind, width, count, out } => {
            let kind: DatasetKind = kind.parse().or_else(|e: Error| usage(e.to_string()))?;
            let spec = DatasetSpec { kind, width, n: count, seed: cli.seed.unwrap_or(0) };
            let values = gen_dataset(&spec)?;
            let fmt = NumberFormat::unsigned(width)?;
            let values: Vec<Value> = values.iter().map(|&v| Value::Int(v as i128)).collect();
            emit(out.as_deref(), &write_dataset(&fmt, &values))
        }
        Command::Sort { input, strategy: sargs, direction, trace, out } => {
            let direction: Direction = direction.parse().or_else(|e: Error| usage(e.to_string()))?;
            let cfg = strategy(config, &sargs)?;
            let (fmt, values) = load_dataset(&input)?;
            let ds = encode(&values, fmt)?;
            let opts = SortOptions { trace: trace.is_some(), ..Default::default() };
            let outcome = cfg.run(&ds, direction, &opts)?;
            if let Some(p) = &trace {
                std::fs::write(p, to_jsonl(&outcome.trace)).map_err(Error::from)?;
            }
            #[derive(Serialize)]
            struct SortReport<'a> {
                format: String,
                direction: Direction,
                strategy: &'a StrategyConfig,
                order: &'a [usize],
                values: Vec<Value>,
                metrics: &'a RunMetrics,
            }
            let report = SortReport {
                format: fmt.header(),
                direction,
                strategy: &cfg,
                order: &outcome.order,
                values: outcome.order.iter().map(|&r| values[r]).collect(),
                metrics: &outcome.metrics,
            };
            emit(out.as_deref(), &to_json(&report)?)
        }
        Command::Bench { out, datasets, widths, sizes, strategies, ks, reps } => {
            let mut cfg = match config {
                Some(p) => read_json::<BenchConfig>(p)?,
                None => BenchConfig::default(),
            };
            if let Some(s) = cli.seed {
                cfg.seed = s;
            }
            if !datasets.is_empty() {
                cfg.datasets = datasets
                    .iter()
                    .map(|d| d.parse::<DatasetKind>())
                    .collect::<Result<_, _>>()
                    .or_else(|e| usage(e.to_string()))?;
            }
            if !widths.is_empty() {
                cfg.widths = widths;
            }
            if !sizes.is_empty() {
                cfg.sizes = sizes;
            }
            if !strategies.is_empty() {
                cfg.strategies = strategies
                    .iter()
                    .map(|s| {
                        let kind = s.parse::<StrategyKind>()?;
                        Ok(match kind {
                            StrategyKind::Ml => StrategyConfig::ml(1, 2, Default::default()),
                            other => StrategyConfig { strategy: other, ..StrategyConfig::basic(1) },
                        })
                    })
                    .collect::<Result<_, Error>>()
                    .or_else(|e| usage(e.to_string()))?;
            }
            if !ks.is_empty() {
                cfg.ks = ks;
            }
            if let Some(r) = reps {
                cfg.repetitions = r;
            }
            let csv = match out.as_deref().and_then(|p| p.extension()).and_then(|e| e.to_str()) {
                None if out.is_none() => false,
                Some("csv") => true,
                Some("json") => false,
                _ => return usage("--out must end in .csv or .json"),
            };
            let report = run_bench(&cfg)?;
            let text = if csv { report.to_csv()? } else { report.to_json()? };
            emit(out.as_deref(), &text)
        }
        Command::Dijkstra { graph, start, end, strategy: sargs } => {
            let cfg = strategy(config, &sargs)?;
            let text = std::fs::read_to_string(&graph).map_err(Error::from)?;
            let g = Graph::parse(&text)?;
            let result = sorter_dijkstra(&g, start, end, &cfg)?;
            emit(None, &to_json(&result)?)
        }
        Command::Prune { weights, prune_rate, ber, strategy: sargs } => {
            let cfg = strategy(config, &sargs)?;
            let (fmt, values) = load_dataset(&weights)?;
            if fmt.kind != FormatKind::SignMagnitude {
                return Err(Error::Config(format!("weights must be sign_magnitude, got {fmt}")).into());
            }
            let req = PruneRequest::new(values, fmt.width, prune_rate)?;
            let result = prune_select(&req, &cfg, Some(ber), cli.seed.unwrap_or(0))?;
            emit(None, &to_json(&result)?)
        }
        Command::Device { model, cells } => {
            let mut m = match model.as_deref().or(config) {
                Some(p) => read_json::<DeviceModel>(p)?,
                None => DeviceModel::default(),
            };
            if let Some(s) = cli.seed {
                m.seed = s;
            }
            let (_, stats) = monte_carlo(&m, cells)?;
            #[derive(Serialize)]
            struct DeviceReport<'a> {
                model: &'a DeviceModel,
                stats: msim::device::ProgStats,
                reference_mean_pulses: f64,
                reference_mean_pfr: f64,
            }
            let report = DeviceReport { model: &m, stats, reference_mean_pulses: 13.95, reference_mean_pfr: 0.01224 };
            emit(None, &to_json(&report)?)
        }
    }
}
