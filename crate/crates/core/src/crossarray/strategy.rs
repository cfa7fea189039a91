//! Strategy configuration and dispatch.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::bs::bs_sort;
use super::mb::mb_sort;
use super::ml::MlConfig;
use crate::datatypes::{Direction, EncodedDataset};
use crate::device::{CellArray, CellConfig, CellMode};
use crate::engine::{bts_sort_array, tns_sort_array, DupCheck, RunMetrics, SortOptions, SortOutcome};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartitionKind {
    MultiBank,
    BitSlice,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionPlan {
    pub kind: PartitionKind,
    /// Rows per bank, or cell columns per slice (MSB slice first).
    pub sizes: Vec<usize>,
}

impl PartitionPlan {
    pub fn new(kind: PartitionKind, sizes: Vec<usize>) -> Self {
        PartitionPlan { kind, sizes }
    }

    /// `parts` near-equal pieces of `total`, larger pieces first.
    pub fn even(kind: PartitionKind, total: usize, parts: usize) -> Self {
        let parts = parts.clamp(1, total.max(1));
        let base = total / parts;
        let extra = total % parts;
        PartitionPlan { kind, sizes: (0..parts).map(|i| base + usize::from(i < extra)).collect() }
    }

    pub fn check(&self, kind: PartitionKind, total: usize) -> Result<()> {
        if self.kind != kind {
            return Err(Error::Config(format!("expected a {kind:?} plan, got {:?}", self.kind)));
        }
        if self.sizes.is_empty() {
            return Err(Error::Config("partition plan has no parts".into()));
        }
        let sum: usize = self.sizes.iter().sum();
        if sum != total {
            return Err(Error::Config(format!("partition sizes sum to {sum}, expected {total}")));
        }
        if kind == PartitionKind::BitSlice && self.sizes.contains(&0) {
            return Err(Error::Config("bit slices must be at least one column wide".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrategyKind {
    Basic,
    Bts,
    Mb,
    Bs,
    Ml,
}

impl StrategyKind {
    pub fn name(self) -> &'static str {
        match self {
            StrategyKind::Basic => "basic",
            StrategyKind::Bts => "bts",
            StrategyKind::Mb => "mb",
            StrategyKind::Bs => "bs",
            StrategyKind::Ml => "ml",
        }
    }
}

impl FromStr for StrategyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "basic" | "tns" => Ok(StrategyKind::Basic),
            "bts" => Ok(StrategyKind::Bts),
            "mb" => Ok(StrategyKind::Mb),
            "bs" => Ok(StrategyKind::Bs),
            "ml" => Ok(StrategyKind::Ml),
            other => Err(Error::Config(format!("unknown strategy '{other}'"))),
        }
    }
}

fn default_k() -> usize {
    1
}

fn default_bits() -> u32 {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrategyConfig {
    pub strategy: StrategyKind,
    #[serde(default = "default_k")]
    pub k: usize,
    /// Explicit partition sizes for `mb` / `bs`.
    #[serde(default)]
    pub sizes: Vec<usize>,
    /// Even partition into this many parts when `sizes` is empty (default 2).
    #[serde(default)]
    pub parts: Option<usize>,
    #[serde(default = "default_bits")]
    pub bits_per_cell: u32,
    #[serde(default)]
    pub dup_check: DupCheck,
    #[serde(default)]
    pub cell_mode: Option<CellMode>,
    #[serde(default)]
    pub fifo_capacity: Option<usize>,
    #[serde(default)]
    pub clock_hz: Option<f64>,
}

impl Default for StrategyConfig {
    fn default() -> Self {
        StrategyConfig::basic(1)
    }
}

impl StrategyConfig {
    pub fn basic(k: usize) -> Self {
        StrategyConfig {
            strategy: StrategyKind::Basic,
            k,
            sizes: Vec::new(),
            parts: None,
            bits_per_cell: 1,
            dup_check: DupCheck::Actual,
            cell_mode: None,
            fifo_capacity: None,
            clock_hz: None,
        }
    }

    pub fn bts() -> Self {
        StrategyConfig { strategy: StrategyKind::Bts, ..Self::basic(1) }
    }

    pub fn mb(k: usize, sizes: Vec<usize>) -> Self {
        StrategyConfig { strategy: StrategyKind::Mb, sizes, ..Self::basic(k) }
    }

    pub fn bs(k: usize, sizes: Vec<usize>) -> Self {
        StrategyConfig { strategy: StrategyKind::Bs, sizes, ..Self::basic(k) }
    }

    pub fn ml(k: usize, bits_per_cell: u32, dup_check: DupCheck) -> Self {
        StrategyConfig { strategy: StrategyKind::Ml, bits_per_cell, dup_check, ..Self::basic(k) }
    }

    pub fn with_parts(mut self, parts: usize) -> Self {
        self.parts = Some(parts);
        self
    }

    pub fn ml_config(&self) -> MlConfig {
        let mut ml = MlConfig::new(self.bits_per_cell, self.dup_check);
        if let Some(mode) = self.cell_mode {
            ml.cell_mode = mode;
        }
        ml
    }

    /// Cell layout the strategy runs on.
    pub fn cell_config(&self) -> Result<CellConfig> {
        match self.strategy {
            StrategyKind::Ml => self.ml_config().cell_config(),
            _ if self.bits_per_cell != 1 => {
                Err(Error::Config(format!("bits_per_cell applies to the ml strategy only (got {})", self.bits_per_cell)))
            }
            _ => Ok(CellConfig::default()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::Config("k must be at least 1".into()));
        }
        if self.parts == Some(0) {
            return Err(Error::Config("parts must be at least 1".into()));
        }
        if self.clock_hz.is_some_and(|c| !(c > 0.0)) {
            return Err(Error::Config("clock_hz must be positive".into()));
        }
        self.cell_config()?;
        Ok(())
    }

    pub fn plan(&self, total: usize) -> Option<PartitionPlan> {
        let kind = match self.strategy {
            StrategyKind::Mb => PartitionKind::MultiBank,
            StrategyKind::Bs => PartitionKind::BitSlice,
            _ => return None,
        };
        Some(if self.sizes.is_empty() {
            PartitionPlan::even(kind, total, self.parts.unwrap_or(2))
        } else {
            PartitionPlan::new(kind, self.sizes.clone())
        })
    }

    /// Short label for reports, e.g. `ml-n2-ideal`.
    pub fn label(&self) -> String {
        let mut s = self.strategy.name().to_string();
        match self.strategy {
            StrategyKind::Mb | StrategyKind::Bs => {
                if !self.sizes.is_empty() {
                    let sizes: Vec<String> = self.sizes.iter().map(|x| x.to_string()).collect();
                    s.push_str(&format!("-{}", sizes.join("+")));
                } else {
                    s.push_str(&format!("-p{}", self.parts.unwrap_or(2)));
                }
            }
            StrategyKind::Ml => {
                s.push_str(&format!("-n{}", self.bits_per_cell));
                if self.dup_check == DupCheck::Ideal {
                    s.push_str("-ideal");
                }
                if self.cell_mode == Some(CellMode::PseudoMultilevel) {
                    s.push_str("-pseudo");
                }
            }
            _ => {}
        }
        s
    }

    pub fn run(&self, ds: &EncodedDataset, direction: Direction, opts: &SortOptions) -> Result<SortOutcome> {
        self.validate()?;
        let array = CellArray::from_dataset(ds, self.cell_config()?)?;
        self.run_on_array(&array, direction, opts)
    }

    /// Run on an existing (possibly corrupted) array.
    pub fn run_on_array(&self, array: &CellArray, direction: Direction, opts: &SortOptions) -> Result<SortOutcome> {
        self.validate()?;
        let mut opts = *opts;
        if opts.clock_hz.is_none() {
            opts.clock_hz = self.clock_hz;
        }
        if array.cell_config().bits_per_cell != self.cell_config()?.bits_per_cell {
            return Err(Error::Config(format!(
                "array has {}-bit cells but {} expects {}",
                array.bits_per_cell(),
                self.label(),
                self.bits_per_cell
            )));
        }
        match self.strategy {
            StrategyKind::Basic | StrategyKind::Ml => tns_sort_array(array, direction, self.k, self.dup_check, &opts),
            StrategyKind::Bts => bts_sort_array(array, direction, &opts),
            StrategyKind::Mb => {
                let plan = self.plan(array.n_rows()).expect("mb has a plan");
                mb_sort(array, direction, self.k, &plan, &opts)
            }
            StrategyKind::Bs => {
                let plan = self.plan(array.cell_cols()).expect("bs has a plan");
                bs_sort(array, direction, self.k, &plan, self.fifo_capacity, &opts)
            }
        }
    }
}

impl fmt::Display for StrategyConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} k={}", self.label(), self.k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Throughput {
    pub numbers_per_us: f64,
    pub numbers_per_s: f64,
    /// Only when a per-cycle energy is configured.
    pub energy_per_number_nj: Option<f64>,
}

/// Throughput of a finished run at `clock_hz`.
pub fn estimate_throughput(metrics: &RunMetrics, clock_hz: f64, energy_per_cycle_nj: Option<f64>) -> Result<Throughput> {
    if !(clock_hz > 0.0) {
        return Err(Error::Config("clock_hz must be positive".into()));
    }
    if metrics.cycle_count == 0 {
        return Ok(Throughput { numbers_per_us: 0.0, numbers_per_s: 0.0, energy_per_number_nj: None });
    }
    let per_s = metrics.numbers as f64 * clock_hz / metrics.cycle_count as f64;
    let energy = energy_per_cycle_nj
        .filter(|_| metrics.numbers > 0)
        .map(|e| e * metrics.cycle_count as f64 / metrics.numbers as f64);
    Ok(Throughput { numbers_per_us: per_s / 1e6, numbers_per_s: per_s, energy_per_number_nj: energy })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datatypes::encode_unsigned;

    #[test]
    fn even_plans() {
        assert_eq!(PartitionPlan::even(PartitionKind::MultiBank, 10, 3).sizes, vec![4, 3, 3]);
        assert_eq!(PartitionPlan::even(PartitionKind::BitSlice, 2, 5).sizes, vec![1, 1]);
    }

    #[test]
    fn config_json() {
        let cfg: StrategyConfig =
            serde_json::from_str(r#"{"strategy":"ml","k":3,"bits_per_cell":2,"dup_check":"ideal"}"#).unwrap();
        assert_eq!(cfg, StrategyConfig::ml(3, 2, DupCheck::Ideal));
        assert_eq!(cfg.label(), "ml-n2-ideal");
        assert!(serde_json::from_str::<StrategyConfig>(r#"{"strategy":"nope"}"#).is_err());
    }

    #[test]
    fn dispatch_examples() {
        let ds = encode_unsigned(&[2, 3, 9, 14], 4).unwrap();
        let d = Direction::MinFirst;
        let o = SortOptions::default();
        assert_eq!(StrategyConfig::bs(1, vec![2, 2]).run(&ds, d, &o).unwrap().metrics.cycle_count, 7);
        assert_eq!(StrategyConfig::ml(1, 2, DupCheck::Actual).run(&ds, d, &o).unwrap().metrics.cycle_count, 5);
        assert_eq!(StrategyConfig::bts().run(&ds, d, &o).unwrap().metrics.cycle_count, 16);
    }

    #[test]
    fn throughput_arithmetic() {
        let m = RunMetrics { numbers: 1024, cycle_count: 2048, ..Default::default() };
        let t = estimate_throughput(&m, 370e6, None).unwrap();
        assert!((t.numbers_per_s - 1024.0 * 370e6 / 2048.0).abs() < 1e-6);
        let m = RunMetrics { numbers: 8, cycle_count: 1000, ..Default::default() };
        let t = estimate_throughput(&m, 1000.0, Some(2.0)).unwrap();
        assert_eq!(t.numbers_per_s, 8.0);
        assert_eq!(t.energy_per_number_nj, Some(250.0));
        assert!(estimate_throughput(&m, 0.0, None).is_err());
    }
}
