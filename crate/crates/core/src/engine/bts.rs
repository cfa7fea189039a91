//! Bit-traversal sorting: every min/max search reads every column from the
//! MSB down, so a run always takes N x (cell columns) cycles.

use super::ne::{read_cell_column, SignPhase};
use super::trace::CycleTrace;
use super::{RunMetrics, SortOptions, SortOutcome};
use crate::datatypes::{Direction, EncodedDataset};
use crate::device::{CellArray, CellConfig};
use crate::error::Result;
use crate::rowset::RowSet;

pub fn bts_sort_array(array: &CellArray, direction: Direction, opts: &SortOptions) -> Result<SortOutcome> {
    let n = array.n_rows();
    let target = opts.target(n);
    let mut out = SortOutcome {
        metrics: RunMetrics { clock_hz: opts.clock_hz, unit_dr_counts: vec![0], ..Default::default() },
        ..Default::default()
    };
    let mut pending = RowSet::full(n);
    let mut cycle = 0;
    let last = array.cell_cols().saturating_sub(1);
    while out.order.len() < target {
        let phase = SignPhase::for_pending(array.sign_plane(), direction, [&pending]);
        let mut valid = pending.clone();
        for cell in 0..=last {
            cycle += 1;
            let mut t = opts.trace.then(|| CycleTrace::new(cycle));
            let mut excluded = t.as_ref().map(|_| Vec::new());
            if let Some(t) = t.as_mut() {
                t.column = Some(cell + 1);
                t.dr_symbols = valid.iter().map(|r| (r, array.symbol(r, cell))).collect();
            }
            read_cell_column(array, cell, &mut [&mut valid], direction, phase, excluded.as_mut());
            out.metrics.dr_count += 1;
            out.metrics.unit_dr_counts[0] += 1;
            if let Some(t) = t.as_mut() {
                t.excluded_rows = excluded.unwrap_or_default();
            }
            if cell == last {
                let row = valid.first().expect("exclusion never empties the valid set");
                pending.remove(row);
                out.order.push(row);
                out.metrics.emit_cycles.push(cycle);
                if let Some(t) = t.as_mut() {
                    t.emitted_row = Some(row);
                }
            }
            if let Some(t) = t {
                out.trace.push(t);
            }
        }
    }
    out.metrics.cycle_count = cycle;
    out.metrics.numbers = out.order.len();
    Ok(out)
}

/// BTS on single-level cells.
pub fn bts_sort(ds: &EncodedDataset, direction: Direction, opts: &SortOptions) -> Result<SortOutcome> {
    let array = CellArray::from_dataset(ds, CellConfig::default())?;
    bts_sort_array(&array, direction, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datatypes::encode_unsigned;

    #[test]
    fn six_numbers_take_24_cycles() {
        let ds = encode_unsigned(&[2, 3, 9, 6, 14, 14], 4).unwrap();
        let out = bts_sort(&ds, Direction::MinFirst, &SortOptions::default()).unwrap();
        assert_eq!(out.order, vec![0, 1, 3, 2, 4, 5]);
        assert_eq!(out.metrics.cycle_count, 24);
        assert_eq!(out.metrics.dr_count, 24);
    }

    #[test]
    fn one_pass_for_one_number() {
        let ds = encode_unsigned(&[11], 4).unwrap();
        let out = bts_sort(&ds, Direction::MaxFirst, &SortOptions::default()).unwrap();
        assert_eq!(out.metrics.cycle_count, 4);
    }

    #[test]
    fn four_distinct_numbers_take_16_reads() {
        let ds = encode_unsigned(&[9, 2, 14, 3], 4).unwrap();
        let out = bts_sort(&ds, Direction::MinFirst, &SortOptions::default()).unwrap();
        assert_eq!(out.metrics.dr_count, 16);
        assert_eq!(out.order, vec![1, 3, 0, 2]);
    }
}
