//! Comparison-free sorting core: the bit-traversal baseline (BTS) and
//! tree-node skipping (TNS).

pub mod bts;
pub mod lifo;
pub mod metrics;
pub mod ne;
pub mod tns;
pub mod trace;

use serde::Serialize;

pub use bts::{bts_sort, bts_sort_array};
pub use lifo::{Lifo, TreeNodeRecord};
pub use metrics::RunMetrics;
pub use ne::{excludes_ones, ne_step, NeStep, SignPhase, SyncSignals};
pub use tns::{DupCheck, SorterConfig, SubSorter};
pub use trace::CycleTrace;

use crate::datatypes::{Direction, EncodedDataset};
use crate::device::{CellArray, CellConfig};
use crate::error::{Error, Result};
use crate::rowset::RowSet;

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SortOptions {
    pub trace: bool,
    /// Stop after this many numbers have been emitted.
    pub limit: Option<usize>,
    pub clock_hz: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SortOutcome {
    /// Row indices in emission order.
    pub order: Vec<usize>,
    pub metrics: RunMetrics,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<CycleTrace>,
}

impl SortOptions {
    pub fn traced() -> Self {
        SortOptions { trace: true, ..Default::default() }
    }

    pub(crate) fn target(&self, n: usize) -> usize {
        self.limit.map_or(n, |l| l.min(n))
    }
}

pub(crate) fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::Config("k must be at least 1 (k = 0 is the BTS baseline)".into()));
    }
    Ok(())
}

/// Drive one sub-sorter until `opts` is satisfied.
pub(crate) fn drive(mut sorter: SubSorter<'_>, n: usize, opts: &SortOptions) -> SortOutcome {
    let target = opts.target(n);
    let mut out = SortOutcome::default();
    out.metrics.clock_hz = opts.clock_hz;
    out.metrics.unit_dr_counts = vec![0];
    let mut cycle = 0;
    while out.order.len() < target && !sorter.is_idle() {
        cycle += 1;
        let r = sorter.step(cycle, &mut out.metrics);
        if r.dr {
            out.metrics.dr_count += 1;
            out.metrics.unit_dr_counts[0] += 1;
        } else {
            out.metrics.dr_free_cycles += 1;
        }
        if let Some(row) = r.emitted {
            out.order.push(row);
            out.metrics.emit_cycles.push(cycle);
        }
        if let Some(t) = r.trace {
            out.trace.push(t);
        }
    }
    out.metrics.cycle_count = cycle;
    out.metrics.numbers = out.order.len();
    out
}

/// TNS over every column of `array` with a single bank.
pub fn tns_sort_array(
    array: &CellArray,
    direction: Direction,
    k: usize,
    dup_check: DupCheck,
    opts: &SortOptions,
) -> Result<SortOutcome> {
    check_k(k)?;
    let n = array.n_rows();
    if n == 0 {
        return Ok(SortOutcome { metrics: RunMetrics { clock_hz: opts.clock_hz, ..Default::default() }, ..Default::default() });
    }
    let cfg = SorterConfig { direction, k, dup_check, final_stage: true, trace: opts.trace };
    let sorter = SubSorter::new(array, (0, array.cell_cols() - 1), vec![RowSet::full(n)], cfg);
    Ok(drive(sorter, n, opts))
}

/// Basic TNS on single-level cells.
pub fn tns_sort(ds: &EncodedDataset, direction: Direction, k: usize, opts: &SortOptions) -> Result<SortOutcome> {
    let array = CellArray::from_dataset(ds, CellConfig::default())?;
    tns_sort_array(&array, direction, k, DupCheck::Actual, opts)
}
