//! Multi-bank sorting: rows are sharded across banks that run in lockstep
//! on OR-combined control signals.

use super::strategy::{PartitionKind, PartitionPlan};
use crate::datatypes::Direction;
use crate::device::CellArray;
use crate::engine::{check_k, drive, DupCheck, SortOptions, SortOutcome, SorterConfig, SubSorter};
use crate::error::Result;
use crate::rowset::RowSet;

/// Contiguous row shards for each bank of `plan`.
pub fn bank_domains(n_rows: usize, plan: &PartitionPlan) -> Vec<RowSet> {
    let mut start = 0;
    plan.sizes
        .iter()
        .map(|&size| {
            let shard = RowSet::from_rows(n_rows, start..start + size);
            start += size;
            shard
        })
        .collect()
}

pub fn mb_sort(
    array: &CellArray,
    direction: Direction,
    k: usize,
    plan: &PartitionPlan,
    opts: &SortOptions,
) -> Result<SortOutcome> {
    check_k(k)?;
    plan.check(PartitionKind::MultiBank, array.n_rows())?;
    let n = array.n_rows();
    if n == 0 {
        return Ok(SortOutcome::default());
    }
    let cfg = SorterConfig { direction, k, dup_check: DupCheck::Actual, final_stage: true, trace: opts.trace };
    let sorter = SubSorter::new(array, (0, array.cell_cols() - 1), bank_domains(n, plan), cfg);
    Ok(drive(sorter, n, opts))
}
