//! Cross-array strategies built on the TNS sub-sorter: multi-bank (row
//! shards in lockstep), bit-slice (column pipeline) and multi-level cells.

pub mod bs;
pub mod mb;
pub mod ml;
pub mod strategy;

pub use crate::engine::{DupCheck, SyncSignals};
pub use bs::{bs_sort, NeFifo};
pub use mb::mb_sort;
pub use ml::{ml_sort, ml_sort_array, MlConfig};
pub use strategy::{estimate_throughput, PartitionKind, PartitionPlan, StrategyConfig, StrategyKind, Throughput};
