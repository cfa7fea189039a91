//! Bit-slice sorting: column slices form a pipeline. An upper slice hands
//! each group of rows that tie on its columns to the next slice through a
//! FIFO and immediately starts its next search.
//!
//! Slices are evaluated from the deepest to the top every cycle, so a group
//! queued in cycle t is consumed no earlier than cycle t + 1.

use std::collections::VecDeque;

use super::strategy::{PartitionKind, PartitionPlan};
use crate::datatypes::Direction;
use crate::device::CellArray;
use crate::engine::{check_k, DupCheck, RunMetrics, SortOptions, SortOutcome, SorterConfig, SubSorter};
use crate::error::{Error, Result};
use crate::rowset::RowSet;

/// Survivor groups queued between two slices.
#[derive(Debug, Clone, Default)]
pub struct NeFifo {
    queue: VecDeque<RowSet>,
    capacity: Option<usize>,
    peak: usize,
}

impl NeFifo {
    pub fn new(capacity: Option<usize>) -> Self {
        NeFifo { queue: VecDeque::new(), capacity, peak: 0 }
    }

    pub fn is_full(&self) -> bool {
        self.capacity.is_some_and(|c| self.queue.len() >= c)
    }

    pub fn push(&mut self, entry: RowSet) {
        self.queue.push_back(entry);
        self.peak = self.peak.max(self.queue.len());
    }

    pub fn pop(&mut self) -> Option<RowSet> {
        self.queue.pop_front()
    }

    pub fn len(&self) -> usize {
        self.queue.len()
    }

    pub fn is_empty(&self) -> bool {
        self.queue.is_empty()
    }

    /// Largest occupancy seen.
    pub fn peak(&self) -> usize {
        self.peak
    }
}

/// Inclusive 0-based cell-column range of each slice.
pub fn slice_columns(plan: &PartitionPlan) -> Vec<(usize, usize)> {
    let mut start = 0;
    plan.sizes
        .iter()
        .map(|&w| {
            let r = (start, start + w - 1);
            start += w;
            r
        })
        .collect()
}

pub fn bs_sort(
    array: &CellArray,
    direction: Direction,
    k: usize,
    plan: &PartitionPlan,
    fifo_capacity: Option<usize>,
    opts: &SortOptions,
) -> Result<SortOutcome> {
    check_k(k)?;
    if array.bits_per_cell() != 1 {
        return Err(Error::Unsupported("bit-slice sorting on multi-level cells".into()));
    }
    plan.check(PartitionKind::BitSlice, array.cell_cols())?;
    if fifo_capacity == Some(0) {
        return Err(Error::Config("fifo_capacity must be at least 1".into()));
    }
    let n = array.n_rows();
    let target = opts.target(n);
    let n_slices = plan.sizes.len();
    let mut out = SortOutcome {
        metrics: RunMetrics { clock_hz: opts.clock_hz, unit_dr_counts: vec![0; n_slices], ..Default::default() },
        ..Default::default()
    };
    if n == 0 {
        return Ok(out);
    }

    let mut slices: Vec<SubSorter<'_>> = slice_columns(plan)
        .into_iter()
        .enumerate()
        .map(|(i, cols)| {
            let cfg = SorterConfig {
                direction,
                k,
                dup_check: DupCheck::Actual,
                final_stage: i + 1 == n_slices,
                trace: opts.trace,
            };
            let domain = if i == 0 { RowSet::full(n) } else { RowSet::empty(n) };
            SubSorter::new(array, cols, vec![domain], cfg)
        })
        .collect();
    let mut fifos: Vec<NeFifo> = (1..n_slices).map(|_| NeFifo::new(fifo_capacity)).collect();

    let mut cycle = 0;
    while out.order.len() < target {
        cycle += 1;
        let mut any_dr = false;
        let mut any_active = false;
        let mut cycle_traces = Vec::new();
        for i in (0..n_slices).rev() {
            if i > 0 && slices[i].is_idle() {
                if let Some(entry) = fifos[i - 1].pop() {
                    slices[i].load_entry(entry);
                }
            }
            if slices[i].is_idle() {
                continue;
            }
            any_active = true;
            if i + 1 < n_slices && fifos[i].is_full() {
                out.metrics.stall_cycles += 1;
                continue;
            }
            let r = slices[i].step(cycle, &mut out.metrics);
            if r.dr {
                any_dr = true;
                out.metrics.unit_dr_counts[i] += 1;
            }
            if let Some(group) = r.forwarded {
                fifos[i].push(group);
            }
            if let Some(row) = r.emitted {
                out.order.push(row);
                out.metrics.emit_cycles.push(cycle);
            }
            if let Some(mut t) = r.trace {
                if n_slices > 1 {
                    t.slice = Some(i);
                }
                cycle_traces.push(t);
            }
        }
        assert!(any_active, "bit-slice pipeline drained before every number was emitted");
        if any_dr {
            out.metrics.dr_count += 1;
        } else {
            out.metrics.dr_free_cycles += 1;
        }
        cycle_traces.reverse();
        out.trace.extend(cycle_traces);
    }
    out.metrics.cycle_count = cycle;
    out.metrics.numbers = out.order.len();
    Ok(out)
}
