//! Benchmark grids and their CSV/JSON reports.
//!
//! A grid is the product of dataset kinds, widths, sizes and repetitions
//! (the instances) with strategies and k values. Instance `i` draws its data
//! from a ChaCha8 stream `(seed, i)`, so results do not depend on scheduling.

use std::path::PathBuf;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::dataset::{gen_values, load_dataset, DatasetKind};
use super::par::{map_indexed, Exec};
use crate::crossarray::{StrategyConfig, StrategyKind};
use crate::datatypes::{encode, encode_unsigned, reference_order, Direction, EncodedDataset};
use crate::engine::SortOptions;
use crate::error::{Error, Result};

fn default_datasets() -> Vec<DatasetKind> {
    vec![DatasetKind::Random]
}

fn default_widths() -> Vec<u32> {
    vec![8]
}

fn default_sizes() -> Vec<usize> {
    vec![256]
}

fn default_strategies() -> Vec<StrategyConfig> {
    vec![StrategyConfig::basic(1)]
}

fn default_reps() -> usize {
    1
}

fn default_direction() -> Direction {
    Direction::MinFirst
}

fn default_clock() -> f64 {
    370e6
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchConfig {
    #[serde(default = "default_datasets")]
    pub datasets: Vec<DatasetKind>,
    /// Dataset files, each one instance per repetition.
    #[serde(default)]
    pub files: Vec<PathBuf>,
    #[serde(default = "default_widths")]
    pub widths: Vec<u32>,
    #[serde(default = "default_sizes")]
    pub sizes: Vec<usize>,
    #[serde(default = "default_strategies")]
    pub strategies: Vec<StrategyConfig>,
    /// k sweep applied to every LIFO-based strategy; empty keeps each strategy's own k.
    #[serde(default)]
    pub ks: Vec<usize>,
    #[serde(default = "default_reps")]
    pub repetitions: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_direction")]
    pub direction: Direction,
    #[serde(default = "default_clock")]
    pub clock_hz: f64,
    /// Check every output against the reference ordering.
    #[serde(default = "default_true")]
    pub verify: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            datasets: default_datasets(),
            files: Vec::new(),
            widths: default_widths(),
            sizes: default_sizes(),
            strategies: default_strategies(),
            ks: Vec::new(),
            repetitions: default_reps(),
            seed: 0,
            direction: default_direction(),
            clock_hz: default_clock(),
            verify: true,
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.clock_hz > 0.0) {
            return Err(Error::Config("clock_hz must be positive".into()));
        }
        if self.datasets.contains(&DatasetKind::File) {
            return Err(Error::Config("list dataset files under 'files', not as a generated kind".into()));
        }
        if self.ks.contains(&0) {
            return Err(Error::Config("k values must be at least 1".into()));
        }
        for s in &self.strategies {
            s.validate()?;
        }
        Ok(())
    }

    /// Strategy runs per instance after applying the k sweep.
    pub fn runs(&self) -> Vec<StrategyConfig> {
        let mut out = Vec::new();
        for s in &self.strategies {
            if self.ks.is_empty() || s.strategy == StrategyKind::Bts {
                out.push(s.clone());
            } else {
                for &k in &self.ks {
                    out.push(StrategyConfig { k, ..s.clone() });
                }
            }
        }
        out
    }

    fn instances(&self) -> Vec<Instance> {
        let mut out = Vec::new();
        for rep in 0..self.repetitions {
            for &kind in &self.datasets {
                for &width in &self.widths {
                    for &n in &self.sizes {
                        out.push(Instance { kind, width, n, rep, file: None });
                    }
                }
            }
            for f in &self.files {
                out.push(Instance { kind: DatasetKind::File, width: 0, n: 0, rep, file: Some(f.clone()) });
            }
        }
        out
    }
}

#[derive(Debug, Clone)]
struct Instance {
    kind: DatasetKind,
    width: u32,
    n: usize,
    rep: usize,
    file: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub instance: usize,
    pub dataset: String,
    pub width: u32,
    pub n: usize,
    pub rep: usize,
    pub strategy: String,
    pub k: usize,
    pub cycles: u64,
    pub dr_count: u64,
    pub dr_free_cycles: u64,
    pub reloads: u64,
    pub discarded: u64,
    pub restarts: u64,
    pub stalls: u64,
    pub drs_per_number: f64,
    pub numbers_per_us: f64,
    pub correct: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Aggregate {
    pub dataset: String,
    pub width: u32,
    pub n: usize,
    pub strategy: String,
    pub k: usize,
    pub runs: usize,
    pub mean_cycles: f64,
    pub p50_cycles: u64,
    pub p95_cycles: u64,
    pub mean_dr_count: f64,
    pub mean_drs_per_number: f64,
    pub mean_numbers_per_us: f64,
    pub all_correct: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub seed: u64,
    pub config: BenchConfig,
    pub records: Vec<RunRecord>,
    pub aggregates: Vec<Aggregate>,
}

fn instance_data(cfg: &BenchConfig, idx: usize, inst: &Instance) -> Result<(String, EncodedDataset)> {
    match &inst.file {
        Some(path) => {
            let (fmt, values) = load_dataset(path)?;
            Ok((format!("file:{}", path.display()), encode(&values, fmt)?))
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(idx as u64);
            let values = gen_values(inst.kind, inst.width, inst.n, &mut rng)?;
            Ok((inst.kind.name().to_string(), encode_unsigned(&values, inst.width)?))
        }
    }
}

fn run_instance(cfg: &BenchConfig, runs: &[StrategyConfig], idx: usize, inst: &Instance) -> Result<Vec<RunRecord>> {
    let (name, ds) = instance_data(cfg, idx, inst)?;
    let reference = cfg.verify.then(|| reference_order(&ds.values(), cfg.direction));
    let opts = SortOptions { clock_hz: Some(cfg.clock_hz), ..Default::default() };
    runs.iter()
        .map(|s| {
            let out = s.run(&ds, cfg.direction, &opts)?;
            let m = &out.metrics;
            Ok(RunRecord {
                instance: idx,
                dataset: name.clone(),
                width: ds.width(),
                n: ds.n_rows(),
                rep: inst.rep,
                strategy: s.label(),
                k: s.k,
                cycles: m.cycle_count,
                dr_count: m.dr_count,
                dr_free_cycles: m.dr_free_cycles,
                reloads: m.reload_count,
                discarded: m.discarded_records,
                restarts: m.restart_from_msb_count,
                stalls: m.stall_cycles,
                drs_per_number: m.drs_per_number(),
                numbers_per_us: m.throughput_per_us(Some(cfg.clock_hz)).unwrap_or(0.0),
                correct: reference.as_ref().is_none_or(|r| *r == out.order),
            })
        })
        .collect()
}

/// Nearest-rank percentile of a sorted slice.
fn percentile(sorted: &[u64], p: f64) -> u64 {
    if sorted.is_empty() {
        return 0;
    }
    let rank = ((p / 100.0) * sorted.len() as f64).ceil().max(1.0) as usize;
    sorted[rank.min(sorted.len()) - 1]
}

pub fn aggregate(records: &[RunRecord]) -> Vec<Aggregate> {
    type Key = (String, u32, usize, String, usize);
    let mut keys: Vec<Key> = Vec::new();
    let mut groups: Vec<Vec<&RunRecord>> = Vec::new();
    for r in records {
        let key = (r.dataset.clone(), r.width, r.n, r.strategy.clone(), r.k);
        match keys.iter().position(|k| *k == key) {
            Some(i) => groups[i].push(r),
            None => {
                keys.push(key);
                groups.push(vec![r]);
            }
        }
    }
    keys.into_iter()
        .zip(groups)
        .map(|((dataset, width, n, strategy, k), g)| {
            let runs = g.len() as f64;
            let mut cycles: Vec<u64> = g.iter().map(|r| r.cycles).collect();
            cycles.sort_unstable();
            Aggregate {
                dataset,
                width,
                n,
                strategy,
                k,
                runs: g.len(),
                mean_cycles: cycles.iter().sum::<u64>() as f64 / runs,
                p50_cycles: percentile(&cycles, 50.0),
                p95_cycles: percentile(&cycles, 95.0),
                mean_dr_count: g.iter().map(|r| r.dr_count as f64).sum::<f64>() / runs,
                mean_drs_per_number: g.iter().map(|r| r.drs_per_number).sum::<f64>() / runs,
                mean_numbers_per_us: g.iter().map(|r| r.numbers_per_us).sum::<f64>() / runs,
                all_correct: g.iter().all(|r| r.correct),
            }
        })
        .collect()
}

pub fn run_bench(cfg: &BenchConfig) -> Result<BenchReport> {
    run_bench_with(cfg, Exec::default())
}

pub fn run_bench_with(cfg: &BenchConfig, exec: Exec) -> Result<BenchReport> {
    cfg.validate()?;
    let runs = cfg.runs();
    let instances = cfg.instances();
    let per_instance = map_indexed(exec, instances.len(), |i| run_instance(cfg, &runs, i, &instances[i]));
    let mut records = Vec::new();
    for r in per_instance {
        records.extend(r?);
    }
    let aggregates = aggregate(&records);
    Ok(BenchReport { seed: cfg.seed, config: cfg.clone(), records, aggregates })
}

impl BenchReport {
    /// One line per run.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        if self.records.is_empty() {
            w.write_record([
                "instance", "dataset", "width", "n", "rep", "strategy", "k", "cycles", "dr_count",
                "dr_free_cycles", "reloads", "discarded", "restarts", "stalls", "drs_per_number",
                "numbers_per_us", "correct",
            ])
            .map_err(csv_err)?;
        }
        for r in &self.records {
            w.serialize(r).map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_repetitions_is_empty() {
        let cfg = BenchConfig { repetitions: 0, ..Default::default() };
        let rep = run_bench(&cfg).unwrap();
        assert!(rep.records.is_empty());
        assert!(rep.aggregates.is_empty());
        assert!(rep.to_csv().unwrap().starts_with("instance,"));
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let cfg = BenchConfig {
            sizes: vec![32],
            strategies: vec![StrategyConfig::basic(2), StrategyConfig::bs(1, vec![])],
            repetitions: 3,
            seed: 5,
            ..Default::default()
        };
        let a = run_bench_with(&cfg, Exec::Sequential).unwrap();
        let b = run_bench_with(&cfg, Exec::Parallel).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.records.len(), 6);
        assert!(a.records.iter().all(|r| r.correct));
        assert_eq!(a.to_csv().unwrap().lines().count(), 7);
    }

    #[test]
    fn percentiles() {
        let v: Vec<u64> = (1..=20).collect();
        assert_eq!(percentile(&v, 50.0), 10);
        assert_eq!(percentile(&v, 95.0), 19);
        assert_eq!(percentile(&[7], 95.0), 7);
    }

    #[test]
    fn k_sweep_skips_bts() {
        let cfg = BenchConfig {
            strategies: vec![StrategyConfig::bts(), StrategyConfig::basic(1)],
            ks: vec![1, 2, 3],
            ..Default::default()
        };
        assert_eq!(cfg.runs().len(), 4);
    }
}
