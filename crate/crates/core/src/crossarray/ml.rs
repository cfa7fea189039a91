//! Multi-level sorting: each digit read returns an n-bit symbol per row.

use serde::{Deserialize, Serialize};

use crate::datatypes::{Direction, EncodedDataset};
use crate::device::{CellArray, CellConfig, CellMode};
use crate::engine::{tns_sort_array, DupCheck, SortOptions, SortOutcome};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MlConfig {
    pub bits_per_cell: u32,
    pub dup_check: DupCheck,
    pub cell_mode: CellMode,
}

impl MlConfig {
    pub fn new(bits_per_cell: u32, dup_check: DupCheck) -> Self {
        let cell_mode = if bits_per_cell == 1 { CellMode::SingleLevel } else { CellMode::TrueMultilevel };
        MlConfig { bits_per_cell, dup_check, cell_mode }
    }

    pub fn cell_config(&self) -> Result<CellConfig> {
        let mode = if self.bits_per_cell == 1 { CellMode::SingleLevel } else { self.cell_mode };
        CellConfig::new(self.bits_per_cell, mode)
    }
}

pub fn ml_sort(ds: &EncodedDataset, direction: Direction, k: usize, ml: &MlConfig, opts: &SortOptions) -> Result<SortOutcome> {
    let array = CellArray::from_dataset(ds, ml.cell_config()?)?;
    ml_sort_array(&array, direction, k, ml.dup_check, opts)
}

/// TNS over an array already laid out in n-bit cells.
pub fn ml_sort_array(
    array: &CellArray,
    direction: Direction,
    k: usize,
    dup_check: DupCheck,
    opts: &SortOptions,
) -> Result<SortOutcome> {
    tns_sort_array(array, direction, k, dup_check, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datatypes::encode_unsigned;

    #[test]
    fn two_bit_cells_finish_in_five() {
        let ds = encode_unsigned(&[2, 3, 9, 14], 4).unwrap();
        let out = ml_sort(&ds, Direction::MinFirst, 1, &MlConfig::new(2, DupCheck::Actual), &SortOptions::default()).unwrap();
        assert_eq!(out.order, vec![0, 1, 2, 3]);
        assert_eq!(out.metrics.cycle_count, 5);
    }

    #[test]
    fn redundant_records() {
        let ds = encode_unsigned(&[3, 0, 1, 2, 8], 4).unwrap();
        let cycles = |k, dup| {
            ml_sort(&ds, Direction::MinFirst, k, &MlConfig::new(2, dup), &SortOptions::default())
                .unwrap()
                .metrics
                .cycle_count
        };
        assert_eq!(cycles(1, DupCheck::Actual), 6);
        assert_eq!(cycles(3, DupCheck::Actual), 8);
        assert_eq!(cycles(3, DupCheck::Ideal), 6);
    }
}
