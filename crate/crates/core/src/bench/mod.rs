//! Dataset generation, benchmark grids and reports.

pub mod dataset;
pub mod par;
pub mod report;

pub use dataset::{gen_dataset, gen_values, load_dataset, DatasetKind, DatasetSpec};
pub use par::{map_indexed, Exec};
pub use report::{aggregate, run_bench, run_bench_with, Aggregate, BenchConfig, BenchReport, RunRecord};
