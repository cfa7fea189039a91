//! Cycle and digit-read accounting for one sorting run.

use serde::Serialize;

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct RunMetrics {
    /// Numbers emitted by the run.
    pub numbers: usize,
    pub dr_count: u64,
    pub cycle_count: u64,
    /// Cycles that completed without a digit read (hold, last-number after
    /// reload, discarded records, stalls).
    pub dr_free_cycles: u64,
    /// Cycles that started by loading a LIFO record, including records that
    /// turned out to be fully sorted.
    pub reload_count: u64,
    pub discarded_records: u64,
    pub restart_from_msb_count: u64,
    pub stall_cycles: u64,
    pub emit_cycles: Vec<u64>,
    pub reload_cycles: Vec<u64>,
    /// Digit reads per hardware unit (bit slice); a single entry otherwise.
    pub unit_dr_counts: Vec<u64>,
    pub clock_hz: Option<f64>,
}

impl RunMetrics {
    /// Cycles spent on each min/max iteration (between consecutive emissions).
    pub fn iteration_cycles(&self) -> Vec<u64> {
        let mut prev = 0;
        self.emit_cycles
            .iter()
            .map(|&c| {
                let d = c - prev;
                prev = c;
                d
            })
            .collect()
    }

    pub fn drs_per_number(&self) -> f64 {
        if self.numbers == 0 {
            0.0
        } else {
            self.dr_count as f64 / self.numbers as f64
        }
    }

    pub fn numbers_per_dr(&self) -> f64 {
        if self.dr_count == 0 {
            0.0
        } else {
            self.numbers as f64 / self.dr_count as f64
        }
    }

    /// Numbers per microsecond at `clock_hz`, or at the configured clock.
    pub fn throughput_per_us(&self, clock_hz: Option<f64>) -> Option<f64> {
        let clock = clock_hz.or(self.clock_hz)?;
        (self.cycle_count > 0 && clock > 0.0)
            .then(|| self.numbers as f64 * clock / self.cycle_count as f64 / 1e6)
    }

    /// Add the counters of a run executed after this one on the same hardware.
    pub fn accumulate(&mut self, other: &RunMetrics) {
        let offset = self.cycle_count;
        self.numbers += other.numbers;
        self.dr_count += other.dr_count;
        self.cycle_count += other.cycle_count;
        self.dr_free_cycles += other.dr_free_cycles;
        self.reload_count += other.reload_count;
        self.discarded_records += other.discarded_records;
        self.restart_from_msb_count += other.restart_from_msb_count;
        self.stall_cycles += other.stall_cycles;
        self.emit_cycles.extend(other.emit_cycles.iter().map(|c| c + offset));
        self.reload_cycles.extend(other.reload_cycles.iter().map(|c| c + offset));
        if self.unit_dr_counts.len() < other.unit_dr_counts.len() {
            self.unit_dr_counts.resize(other.unit_dr_counts.len(), 0);
        }
        for (a, b) in self.unit_dr_counts.iter_mut().zip(&other.unit_dr_counts) {
            *a += b;
        }
        if self.clock_hz.is_none() {
            self.clock_hz = other.clock_hz;
        }
    }
}
