//! Tree-node-skipping sub-sorter.
//!
//! One `SubSorter` drives a range of cell columns over one or more row banks
//! in lockstep. Basic TNS is a single bank over every column; multi-bank,
//! bit-slice and multi-level sorting reuse it with different shapes.
//!
//! Per cycle the sorter does at most one digit read. A cycle starts in one of
//! these modes:
//!
//! * `Start`: every unsorted row becomes valid, search resumes at the first column.
//! * `Load`: peek the LIFO top. If none of its snapshot rows are still
//!   unsorted the record is discarded and the cycle ends without a read;
//!   otherwise its surviving rows become valid at the recorded column.
//!   An empty LIFO restarts from the first column.
//! * `Search`: continue at the current column.
//! * `Hold`: emit the next repeated value found at the last column.
//!
//! A single valid row is emitted at once (last-number check). Past the last
//! column the remaining valid rows are equal and leave one per cycle.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::lifo::{Lifo, TreeNodeRecord};
use super::metrics::RunMetrics;
use super::ne::{read_cell_column, SignPhase, SyncSignals};
use super::trace::CycleTrace;
use crate::datatypes::Direction;
use crate::device::CellArray;
use crate::rowset::RowSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum DupCheck {
    /// Every mixed read pushes a record.
    #[default]
    Actual,
    /// A multi-level record equal to the unsorted part of the LIFO top replaces it.
    Ideal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SorterConfig {
    pub direction: Direction,
    pub k: usize,
    pub dup_check: DupCheck,
    /// The last stage emits numbers; earlier bit slices hand survivor groups on.
    pub final_stage: bool,
    pub trace: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Start,
    Load,
    Search,
    Hold,
    Idle,
}

#[derive(Debug, Clone)]
struct Bank {
    pending: RowSet,
    valid: RowSet,
    lifo: Lifo,
}

#[derive(Debug, Clone, Default)]
pub struct StepResult {
    pub dr: bool,
    pub emitted: Option<usize>,
    pub forwarded: Option<RowSet>,
    pub trace: Option<CycleTrace>,
}

#[derive(Debug, Clone)]
pub struct SubSorter<'a> {
    array: &'a CellArray,
    first: usize,
    last: usize,
    cfg: SorterConfig,
    banks: Vec<Bank>,
    mode: Mode,
    col: usize,
    hold: VecDeque<usize>,
}

impl<'a> SubSorter<'a> {
    /// `columns` is the inclusive range of 0-based cell columns; `banks` are
    /// the disjoint row domains, in output-priority order.
    pub fn new(array: &'a CellArray, columns: (usize, usize), banks: Vec<RowSet>, cfg: SorterConfig) -> Self {
        assert!(cfg.k >= 1, "k must be at least 1");
        let banks: Vec<Bank> = banks
            .into_iter()
            .map(|pending| Bank { valid: RowSet::empty(pending.capacity()), pending, lifo: Lifo::new(cfg.k) })
            .collect();
        let mode = if banks.iter().all(|b| b.pending.is_empty()) { Mode::Idle } else { Mode::Start };
        SubSorter { array, first: columns.0, last: columns.1, cfg, banks, mode, col: columns.0, hold: VecDeque::new() }
    }

    /// Begin a fresh search over `entry` with an empty LIFO.
    pub fn load_entry(&mut self, entry: RowSet) {
        debug_assert_eq!(self.banks.len(), 1);
        let bank = &mut self.banks[0];
        bank.valid = RowSet::empty(entry.capacity());
        bank.pending = entry;
        bank.lifo.clear();
        self.hold.clear();
        self.mode = if self.banks[0].pending.is_empty() { Mode::Idle } else { Mode::Start };
    }

    pub fn is_idle(&self) -> bool {
        self.mode == Mode::Idle
    }

    pub fn lifo_len(&self) -> usize {
        self.banks[0].lifo.len()
    }

    fn record_current(&self) -> bool {
        self.array.bits_per_cell() >= 2
    }

    fn phase(&self) -> SignPhase {
        SignPhase::for_pending(self.array.sign_plane(), self.cfg.direction, self.banks.iter().map(|b| &b.pending))
    }

    fn valid_count(&self) -> usize {
        self.banks.iter().map(|b| b.valid.count()).sum()
    }

    /// Valid rows in (bank, row) order.
    fn valid_rows(&self) -> Vec<usize> {
        self.banks.iter().flat_map(|b| b.valid.iter()).collect()
    }

    fn restart(&mut self) {
        for b in &mut self.banks {
            b.valid = b.pending.clone();
        }
        self.col = self.first;
    }

    /// Unsorted rows of each bank's LIFO top.
    fn top_remainders(&self) -> Option<Vec<RowSet>> {
        self.banks
            .iter()
            .map(|b| b.lifo.top().map(|t| t.snapshot.and(&b.pending)))
            .collect()
    }

    fn pop_all(&mut self) {
        for b in &mut self.banks {
            b.lifo.pop();
        }
    }

    pub fn step(&mut self, cycle: u64, m: &mut RunMetrics) -> StepResult {
        let mut res = StepResult { trace: self.cfg.trace.then(|| CycleTrace::new(cycle)), ..Default::default() };
        match self.mode {
            Mode::Idle => return res,
            Mode::Hold => {
                let row = self.hold.pop_front().expect("hold mode with rows to emit");
                self.output(&[row], &mut res);
                if self.hold.is_empty() {
                    self.after_emit(m, &mut res);
                }
                return res;
            }
            Mode::Start => self.restart(),
            Mode::Load => match self.top_remainders() {
                None => {
                    m.restart_from_msb_count += 1;
                    self.restart();
                }
                Some(rems) => {
                    m.reload_count += 1;
                    m.reload_cycles.push(cycle);
                    let sig = rems.iter().fold(SyncSignals::default(), |acc, r| {
                        acc.or(SyncSignals { load: !r.is_empty(), ..Default::default() })
                    });
                    if !sig.load {
                        self.pop_all();
                        m.discarded_records += 1;
                        if let Some(t) = res.trace.as_mut() {
                            t.discarded += 1;
                        }
                        return res;
                    }
                    self.col = self.banks[0].lifo.top().expect("non-empty").column;
                    for (b, rem) in self.banks.iter_mut().zip(rems) {
                        b.valid = rem;
                    }
                    if let Some(t) = res.trace.as_mut() {
                        t.reloaded = true;
                    }
                }
            },
            Mode::Search => {}
        }
        self.search(m, &mut res);
        res
    }

    fn search(&mut self, m: &mut RunMetrics, res: &mut StepResult) {
        if self.valid_count() == 1 {
            let rows = self.valid_rows();
            self.output(&rows, res);
            self.after_emit(m, res);
            return;
        }
        if self.col > self.last {
            self.leaf(m, res);
            return;
        }
        self.digit_read(res);
        if self.valid_count() == 1 {
            let rows = self.valid_rows();
            self.output(&rows, res);
            self.after_emit(m, res);
        } else if self.col == self.last {
            self.leaf(m, res);
        } else {
            self.col += 1;
            self.mode = Mode::Search;
        }
    }

    fn digit_read(&mut self, res: &mut StepResult) {
        let cell = self.col;
        let phase = self.phase();
        let snapshots: Vec<RowSet> = self.banks.iter().map(|b| b.valid.clone()).collect();
        if let Some(t) = res.trace.as_mut() {
            t.column = Some(cell + 1);
            t.dr_symbols = snapshots.iter().flat_map(|s| s.iter()).map(|r| (r, self.array.symbol(r, cell))).collect();
            t.dr_symbols.sort_unstable();
        }
        let mut excluded = res.trace.as_ref().map(|_| Vec::new());
        let ren = {
            let mut valid: Vec<&mut RowSet> = self.banks.iter_mut().map(|b| &mut b.valid).collect();
            read_cell_column(self.array, cell, &mut valid, self.cfg.direction, phase, excluded.as_mut())
        };
        res.dr = true;
        if let (Some(t), Some(ex)) = (res.trace.as_mut(), excluded) {
            t.excluded_rows = ex;
        }
        if !ren {
            return;
        }
        let column = if self.record_current() { cell } else { cell + 1 };
        let duplicate = self.record_current()
            && self.cfg.dup_check == DupCheck::Ideal
            && self.banks.iter().zip(&snapshots).all(|(b, s)| {
                b.lifo.top().is_some_and(|t| t.column == column && t.snapshot.and(&b.pending) == *s)
            });
        for (b, snapshot) in self.banks.iter_mut().zip(snapshots) {
            let rec = TreeNodeRecord { column, snapshot };
            if duplicate {
                *b.lifo.top_mut().expect("duplicate implies a top") = rec;
            } else {
                b.lifo.push(rec);
            }
        }
        if let Some(t) = res.trace.as_mut() {
            t.recorded = true;
        }
    }

    /// All valid rows hold the same value: emit the first and hold the rest,
    /// or hand the whole group to the next slice.
    fn leaf(&mut self, m: &mut RunMetrics, res: &mut StepResult) {
        let rows = self.valid_rows();
        if self.cfg.final_stage {
            self.output(&rows[..1], res);
            self.hold = rows[1..].iter().copied().collect();
            if self.hold.is_empty() {
                self.after_emit(m, res);
            } else {
                self.mode = Mode::Hold;
            }
        } else {
            self.output(&rows, res);
            self.after_emit(m, res);
        }
    }

    fn output(&mut self, rows: &[usize], res: &mut StepResult) {
        for &r in rows {
            for b in &mut self.banks {
                b.pending.remove(r);
            }
        }
        if self.cfg.final_stage {
            debug_assert_eq!(rows.len(), 1);
            res.emitted = Some(rows[0]);
            if let Some(t) = res.trace.as_mut() {
                t.emitted_row = Some(rows[0]);
            }
        } else {
            let cap = self.banks[0].pending.capacity();
            res.forwarded = Some(RowSet::from_rows(cap, rows.iter().copied()));
            if let Some(t) = res.trace.as_mut() {
                t.forwarded_rows = rows.to_vec();
            }
        }
    }

    fn after_emit(&mut self, m: &mut RunMetrics, res: &mut StepResult) {
        if self.banks.iter().all(|b| b.pending.is_empty()) {
            self.mode = Mode::Idle;
            return;
        }
        if let Some(rems) = self.top_remainders() {
            if rems.iter().all(|r| r.is_empty()) {
                self.pop_all();
                m.discarded_records += 1;
                if let Some(t) = res.trace.as_mut() {
                    t.discarded += 1;
                }
            }
        }
        self.mode = Mode::Load;
    }
}
