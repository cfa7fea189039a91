//! Number exclusion (NE): which rows leave the current min/max search after
//! a digit read.

use serde::Serialize;

use crate::datatypes::{ColumnRole, Direction};
use crate::device::CellArray;
use crate::rowset::RowSet;

/// Which sign group a float or sign-magnitude search is currently serving.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SignPhase {
    NotApplicable,
    NegativePhase,
    PositivePhase,
}

impl SignPhase {
    /// Phase for a search over `pending` rows: min-first serves negatives
    /// while any remain, max-first serves positives while any remain.
    pub fn for_pending<'a, I>(sign_plane: Option<&RowSet>, direction: Direction, pending: I) -> SignPhase
    where
        I: IntoIterator<Item = &'a RowSet>,
    {
        let Some(sign) = sign_plane else {
            return SignPhase::NotApplicable;
        };
        let mut any_neg = false;
        let mut any_pos = false;
        for p in pending {
            any_neg |= p.intersects(sign);
            any_pos |= !p.is_subset(sign);
        }
        match direction {
            Direction::MinFirst if any_neg => SignPhase::NegativePhase,
            Direction::MinFirst => SignPhase::PositivePhase,
            Direction::MaxFirst if any_pos => SignPhase::PositivePhase,
            Direction::MaxFirst => SignPhase::NegativePhase,
        }
    }
}

/// Whether a mixed read excludes the rows reading 1 (otherwise those reading 0).
pub fn excludes_ones(role: ColumnRole, direction: Direction, phase: SignPhase) -> bool {
    let min = direction == Direction::MinFirst;
    match role {
        ColumnRole::TwosSign => !min,
        ColumnRole::Sign => phase == SignPhase::PositivePhase,
        ColumnRole::Magnitude => {
            let keep_larger = match phase {
                SignPhase::NotApplicable | SignPhase::PositivePhase => !min,
                SignPhase::NegativePhase => min,
            };
            !keep_larger
        }
    }
}

/// The OR-combined control signals shared by lockstepped sub-sorters.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SyncSignals {
    /// Some valid row read a 1.
    pub not_all_0: bool,
    /// Some valid row read a 0.
    pub not_all_1: bool,
    /// Some loaded record still holds unsorted rows.
    pub load: bool,
}

impl SyncSignals {
    pub fn local(plane: &RowSet, valid: &RowSet) -> Self {
        SyncSignals {
            not_all_0: valid.intersects(plane),
            not_all_1: !valid.is_subset(plane),
            load: false,
        }
    }

    pub fn or(self, other: SyncSignals) -> SyncSignals {
        SyncSignals {
            not_all_0: self.not_all_0 || other.not_all_0,
            not_all_1: self.not_all_1 || other.not_all_1,
            load: self.load || other.load,
        }
    }

    /// Results are mixed, so exclusion (and recording) happens.
    pub fn ren(&self) -> bool {
        self.not_all_0 && self.not_all_1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeStep {
    pub ren: bool,
    pub excluded: RowSet,
}

/// One binary digit-read exclusion on a single valid set.
pub fn ne_step(plane: &RowSet, valid: &mut RowSet, role: ColumnRole, direction: Direction, phase: SignPhase) -> NeStep {
    let sig = SyncSignals::local(plane, valid);
    if !sig.ren() {
        return NeStep { ren: false, excluded: RowSet::empty(valid.capacity()) };
    }
    let excluded = if excludes_ones(role, direction, phase) { valid.and(plane) } else { valid.minus(plane) };
    valid.difference_with(&excluded);
    NeStep { ren: true, excluded }
}

/// Read cell column `cell` across lockstepped banks and apply NE bit by bit,
/// each bit with its own polarity. Returns whether any bit was mixed.
pub fn read_cell_column(
    array: &CellArray,
    cell: usize,
    valid: &mut [&mut RowSet],
    direction: Direction,
    phase: SignPhase,
    mut excluded_out: Option<&mut Vec<usize>>,
) -> bool {
    let n = array.bits_per_cell() as usize;
    let mut ren_any = false;
    for bit in cell * n..(cell + 1) * n {
        let plane = array.plane(bit);
        let sig = valid
            .iter()
            .fold(SyncSignals::default(), |acc, v| acc.or(SyncSignals::local(plane, v)));
        if !sig.ren() {
            continue;
        }
        ren_any = true;
        let ones = excludes_ones(array.roles()[bit], direction, phase);
        for v in valid.iter_mut() {
            let excluded = if ones { v.and(plane) } else { v.minus(plane) };
            if let Some(out) = excluded_out.as_deref_mut() {
                out.extend(excluded.iter());
            }
            v.difference_with(&excluded);
        }
    }
    if let Some(out) = excluded_out {
        out.sort_unstable();
    }
    ren_any
}
