//! 1T1R array model: write-verify programming, sensing, digit reads and
//! error injection.
//!
//! The sorter never touches conductances directly. It reads a [`CellArray`],
//! which holds one bit plane per (padded) bit column. A `CellArray` is built
//! either straight from an [`EncodedDataset`] (error-free) or by sensing a
//! programmed [`ArrayState`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::datatypes::{ColumnRole, EncodedDataset, NumberFormat};
use crate::error::{Error, Result};
use crate::rowset::RowSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum CellMode {
    #[default]
    SingleLevel,
    TrueMultilevel,
    PseudoMultilevel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CellConfig {
    pub bits_per_cell: u32,
    pub mode: CellMode,
}

impl Default for CellConfig {
    fn default() -> Self {
        CellConfig { bits_per_cell: 1, mode: CellMode::SingleLevel }
    }
}

impl CellConfig {
    pub fn new(bits_per_cell: u32, mode: CellMode) -> Result<Self> {
        let cfg = CellConfig { bits_per_cell, mode };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.bits_per_cell == 0 || self.bits_per_cell > 8 {
            return Err(Error::Config(format!("bits_per_cell must be in 1..=8, got {}", self.bits_per_cell)));
        }
        if self.mode == CellMode::SingleLevel && self.bits_per_cell != 1 {
            return Err(Error::Config("single_level cells store exactly one bit".into()));
        }
        Ok(())
    }

    /// Bits held by one physical device.
    pub fn bits_per_device(&self) -> u32 {
        match self.mode {
            CellMode::TrueMultilevel => self.bits_per_cell,
            _ => 1,
        }
    }
}

/// Conductance change per pulse. The SET step shrinks linearly from
/// `set_step` at 0 µS to `set_floor` at `g_sat` and stays there; RESET is the
/// mirror image. Each time the pulse polarity reverses, the amplitude is
/// scaled by `reversal_decay`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PulseResponse {
    pub set_step: f64,
    pub set_floor: f64,
    pub reset_step: f64,
    pub reset_floor: f64,
    pub g_sat: f64,
    pub reversal_decay: f64,
}

impl PulseResponse {
    /// Fixed step size in both directions, no saturation, no decay.
    pub fn constant(step: f64) -> Self {
        PulseResponse {
            set_step: step,
            set_floor: step,
            reset_step: step,
            reset_floor: step,
            g_sat: f64::INFINITY,
            reversal_decay: 1.0,
        }
    }

    pub fn set_delta(&self, g: f64) -> f64 {
        let t = (g / self.g_sat).clamp(0.0, 1.0);
        self.set_step + (self.set_floor - self.set_step) * t
    }

    pub fn reset_delta(&self, g: f64) -> f64 {
        let t = (g / self.g_sat).clamp(0.0, 1.0);
        self.reset_floor + (self.reset_step - self.reset_floor) * t
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeviceModel {
    /// Ascending target conductances (µS), one per level.
    pub g_targets: Vec<f64>,
    /// Band half-width as a fraction of the target.
    pub delta_g_ratio: f64,
    pub pulse: PulseResponse,
    /// Per-pulse Gaussian noise (µS).
    pub noise_sd: f64,
    /// Pulse budget per cell; `None` means unbounded.
    pub n_max: Option<u32>,
    /// Conductance after the initial RESET.
    #[serde(default = "default_init_mean")]
    pub init_mean: f64,
    #[serde(default = "default_init_sd")]
    pub init_sd: f64,
    #[serde(default)]
    pub seed: u64,
}

fn default_init_mean() -> f64 {
    0.5
}

fn default_init_sd() -> f64 {
    0.15
}

impl Default for DeviceModel {
    fn default() -> Self {
        DeviceModel {
            g_targets: vec![2.0, 5.0, 9.0, 14.0, 20.0, 27.0, 35.0, 44.0],
            delta_g_ratio: 0.08,
            pulse: PulseResponse {
                set_step: 2.0,
                set_floor: 0.4,
                reset_step: 1.32,
                reset_floor: 0.264,
                g_sat: 50.0,
                reversal_decay: 0.5,
            },
            noise_sd: 0.6,
            n_max: Some(40),
            init_mean: default_init_mean(),
            init_sd: default_init_sd(),
            seed: 0,
        }
    }
}

impl DeviceModel {
    /// Two-level model for single-level and pseudo multi-level devices.
    pub fn binary() -> Self {
        let base = DeviceModel::default();
        DeviceModel { g_targets: vec![2.0, 44.0], ..base }
    }

    pub fn levels(&self) -> usize {
        self.g_targets.len()
    }

    pub fn delta_g(&self, level: usize) -> f64 {
        self.g_targets[level] * self.delta_g_ratio
    }

    pub fn band(&self, level: usize) -> (f64, f64) {
        let g = self.g_targets[level];
        let d = self.delta_g(level);
        (g - d, g + d)
    }

    pub fn validate(&self) -> Result<()> {
        if self.g_targets.len() < 2 {
            return Err(Error::Config("device model needs at least two levels".into()));
        }
        if self.g_targets.iter().any(|g| !g.is_finite() || *g < 0.0) {
            return Err(Error::Config("g_targets must be finite and non-negative".into()));
        }
        if !(self.delta_g_ratio >= 0.0) {
            return Err(Error::Config("delta_g_ratio must be non-negative".into()));
        }
        for i in 1..self.levels() {
            let (_, hi) = self.band(i - 1);
            let (lo, _) = self.band(i);
            if !(self.g_targets[i] > self.g_targets[i - 1]) || hi >= lo {
                return Err(Error::Config(format!("tolerance bands of levels {} and {i} overlap", i - 1)));
            }
        }
        let p = &self.pulse;
        if !(p.set_step > 0.0 && p.set_floor > 0.0 && p.reset_step > 0.0 && p.reset_floor > 0.0) {
            return Err(Error::Config("pulse steps must be positive".into()));
        }
        if !(p.reversal_decay > 0.0 && p.reversal_decay <= 1.0) || !(p.g_sat > 0.0) {
            return Err(Error::Config("reversal_decay must be in (0, 1] and g_sat positive".into()));
        }
        if !(self.noise_sd >= 0.0) || !(self.init_sd >= 0.0) {
            return Err(Error::Config("noise parameters must be non-negative".into()));
        }
        Ok(())
    }
}

/// Nearest level by midpoint thresholds; an exact midpoint senses as the lower level.
pub fn sense_symbol(conductance: f64, model: &DeviceModel) -> u32 {
    let t = &model.g_targets;
    let mut level = 0;
    for i in 1..t.len() {
        let mid = (t[i - 1] + t[i]) / 2.0;
        if conductance > mid {
            level = i;
        } else {
            break;
        }
    }
    level as u32
}

/// Row-major matrix of per-device symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

impl SymbolMatrix {
    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.data[row * self.cols + col]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProgOutcome {
    Success,
    Failure,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArrayState {
    pub rows: usize,
    pub cols: usize,
    pub conductance: Vec<f64>,
    pub intended: Vec<u32>,
    pub outcome: Vec<ProgOutcome>,
    pub pulses: Vec<u32>,
}

impl ArrayState {
    pub fn sensed(&self, model: &DeviceModel) -> SymbolMatrix {
        SymbolMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.conductance.iter().map(|&g| sense_symbol(g, model)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelStats {
    pub level: usize,
    pub target: f64,
    pub cells: usize,
    pub failures: usize,
    pub pfr: f64,
    pub mean_pulses: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProgStats {
    pub cells: usize,
    pub total_pulses: u64,
    pub mean_pulses: f64,
    /// Failed cells over all cells.
    pub pfr: f64,
    /// Unweighted mean of the per-level failure rates.
    pub mean_level_pfr: f64,
    pub per_level: Vec<LevelStats>,
}

impl ProgStats {
    fn collect(model: &DeviceModel, state: &ArrayState) -> Self {
        let mut per_level: Vec<LevelStats> = model
            .g_targets
            .iter()
            .enumerate()
            .map(|(level, &target)| LevelStats { level, target, cells: 0, failures: 0, pfr: 0.0, mean_pulses: 0.0 })
            .collect();
        let mut total = 0u64;
        for i in 0..state.intended.len() {
            let l = &mut per_level[state.intended[i] as usize];
            l.cells += 1;
            l.mean_pulses += state.pulses[i] as f64;
            total += state.pulses[i] as u64;
            if state.outcome[i] == ProgOutcome::Failure {
                l.failures += 1;
            }
        }
        let mut level_pfr_sum = 0.0;
        let mut used = 0usize;
        for l in &mut per_level {
            if l.cells > 0 {
                l.mean_pulses /= l.cells as f64;
                l.pfr = l.failures as f64 / l.cells as f64;
                level_pfr_sum += l.pfr;
                used += 1;
            }
        }
        let cells = state.intended.len();
        let failures: usize = per_level.iter().map(|l| l.failures).sum();
        ProgStats {
            cells,
            total_pulses: total,
            mean_pulses: if cells == 0 { 0.0 } else { total as f64 / cells as f64 },
            pfr: if cells == 0 { 0.0 } else { failures as f64 / cells as f64 },
            mean_level_pfr: if used == 0 { 0.0 } else { level_pfr_sum / used as f64 },
            per_level,
        }
    }
}

/// Program one cell towards `level`. Returns final conductance, pulses applied
/// and whether it ended in band.
pub fn program_cell<R: Rng>(model: &DeviceModel, level: usize, rng: &mut R) -> (f64, u32, bool) {
    let (lo, hi) = model.band(level);
    let mut g = if model.init_sd > 0.0 {
        Normal::new(model.init_mean, model.init_sd).unwrap().sample(rng)
    } else {
        model.init_mean
    };
    g = g.max(0.0);
    let noise = (model.noise_sd > 0.0).then(|| Normal::new(0.0, model.noise_sd).unwrap());
    let mut amp = 1.0;
    let mut last_set: Option<bool> = None;
    let mut pulses = 0u32;
    loop {
        if g >= lo && g <= hi {
            return (g, pulses, true);
        }
        if model.n_max.is_some_and(|n| pulses >= n) {
            return (g, pulses, false);
        }
        let set = g < lo;
        if last_set.is_some_and(|prev| prev != set) {
            amp *= model.pulse.reversal_decay;
        }
        last_set = Some(set);
        let step = if set { model.pulse.set_delta(g) } else { -model.pulse.reset_delta(g) };
        let n = noise.map_or(0.0, |d| d.sample(rng));
        g = (g + amp * step + n).max(0.0);
        pulses += 1;
    }
}

/// Write-verify every cell of `symbols` (row-major order, one RNG stream
/// seeded from `model.seed`).
pub fn write_verify(symbols: &SymbolMatrix, model: &DeviceModel) -> Result<(ArrayState, ProgStats)> {
    model.validate()?;
    if let Some(&bad) = symbols.data.iter().find(|&&s| s as usize >= model.levels()) {
        return Err(Error::Config(format!("symbol {bad} has no target level in a {}-level model", model.levels())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(model.seed);
    let n = symbols.data.len();
    let mut state = ArrayState {
        rows: symbols.rows,
        cols: symbols.cols,
        conductance: Vec::with_capacity(n),
        intended: symbols.data.clone(),
        outcome: Vec::with_capacity(n),
        pulses: Vec::with_capacity(n),
    };
    for &s in &symbols.data {
        let (g, p, ok) = program_cell(model, s as usize, &mut rng);
        state.conductance.push(g);
        state.pulses.push(p);
        state.outcome.push(if ok { ProgOutcome::Success } else { ProgOutcome::Failure });
    }
    let stats = ProgStats::collect(model, &state);
    Ok((state, stats))
}

/// Program `cells` devices cycling through every level in turn.
pub fn monte_carlo(model: &DeviceModel, cells: usize) -> Result<(ArrayState, ProgStats)> {
    let levels = model.levels() as u32;
    let symbols = SymbolMatrix {
        rows: cells,
        cols: 1,
        data: (0..cells as u32).map(|i| i % levels).collect(),
    };
    write_verify(&symbols, model)
}

/// Per-valid-row symbols of one cell column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DrResult {
    pub column: usize,
    pub symbols: Vec<(usize, u32)>,
}

/// The array as seen by the sorter: one row set per padded bit column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellArray {
    fmt: NumberFormat,
    cfg: CellConfig,
    n_rows: usize,
    pad: u32,
    planes: Vec<RowSet>,
    roles: Vec<ColumnRole>,
}

impl CellArray {
    pub fn from_dataset(ds: &EncodedDataset, cfg: CellConfig) -> Result<Self> {
        cfg.validate()?;
        let fmt = ds.fmt;
        let n = cfg.bits_per_cell;
        let pad = fmt.width.div_ceil(n) * n - fmt.width;
        let total = fmt.width + pad;
        let n_rows = ds.n_rows();
        let mut planes = vec![RowSet::empty(n_rows); total as usize];
        for (row, &w) in ds.words().iter().enumerate() {
            for (col, plane) in planes.iter_mut().enumerate() {
                if fmt.padded_bit(w, pad, col as u32) {
                    plane.insert(row);
                }
            }
        }
        Ok(CellArray { fmt, cfg, n_rows, pad, planes, roles: fmt.column_roles(pad) })
    }

    /// Rebuild from per-device symbols laid out as by [`CellArray::device_symbols`].
    pub fn from_device_symbols(&self, symbols: &SymbolMatrix) -> Result<Self> {
        if symbols.rows != self.n_rows || symbols.cols != self.device_cols() {
            return Err(Error::Shape(format!(
                "expected {}x{} symbols, got {}x{}",
                self.n_rows,
                self.device_cols(),
                symbols.rows,
                symbols.cols
            )));
        }
        let bpd = self.cfg.bits_per_device();
        let mut out = self.clone();
        for plane in &mut out.planes {
            *plane = RowSet::empty(self.n_rows);
        }
        for row in 0..self.n_rows {
            for dc in 0..symbols.cols {
                let s = symbols.get(row, dc);
                if s >= (1 << bpd) {
                    return Err(Error::Config(format!("symbol {s} exceeds {bpd}-bit device")));
                }
                for b in 0..bpd {
                    if (s >> (bpd - 1 - b)) & 1 == 1 {
                        out.planes[dc * bpd as usize + b as usize].insert(row);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn fmt(&self) -> &NumberFormat {
        &self.fmt
    }

    pub fn cell_config(&self) -> CellConfig {
        self.cfg
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn bits_per_cell(&self) -> u32 {
        self.cfg.bits_per_cell
    }

    pub fn pad(&self) -> u32 {
        self.pad
    }

    pub fn padded_width(&self) -> usize {
        self.planes.len()
    }

    /// Number of cell columns, ⌈W/n⌉.
    pub fn cell_cols(&self) -> usize {
        self.planes.len() / self.cfg.bits_per_cell as usize
    }

    /// Physical devices per row.
    pub fn device_cols(&self) -> usize {
        self.planes.len() / self.cfg.bits_per_device() as usize
    }

    /// Rows with a 1 in 0-based padded bit column `bit`.
    pub fn plane(&self, bit: usize) -> &RowSet {
        &self.planes[bit]
    }

    pub fn roles(&self) -> &[ColumnRole] {
        &self.roles
    }

    /// Rows whose sign bit is set, for formats with an explicit sign.
    pub fn sign_plane(&self) -> Option<&RowSet> {
        self.fmt.has_sign_bit().then(|| &self.planes[0])
    }

    /// Symbol stored at 0-based cell column `cell` of `row`.
    pub fn symbol(&self, row: usize, cell: usize) -> u32 {
        let n = self.cfg.bits_per_cell as usize;
        (0..n).fold(0, |acc, b| (acc << 1) | self.planes[cell * n + b].contains(row) as u32)
    }

    pub fn device_symbols(&self) -> SymbolMatrix {
        let bpd = self.cfg.bits_per_device() as usize;
        let cols = self.device_cols();
        let mut data = Vec::with_capacity(self.n_rows * cols);
        for row in 0..self.n_rows {
            for dc in 0..cols {
                data.push((0..bpd).fold(0, |acc, b| (acc << 1) | self.planes[dc * bpd + b].contains(row) as u32));
            }
        }
        SymbolMatrix { rows: self.n_rows, cols, data }
    }

    /// Program the array through write-verify and sense it back.
    pub fn program(&self, model: &DeviceModel) -> Result<(CellArray, ArrayState, ProgStats)> {
        let symbols = self.device_symbols();
        let (state, stats) = write_verify(&symbols, model)?;
        let sensed = self.from_device_symbols(&state.sensed(model))?;
        Ok((sensed, state, stats))
    }
}

/// Read 1-based cell column `column` for the rows in `valid`.
pub fn digit_read(array: &CellArray, column: usize, valid: &RowSet) -> Result<DrResult> {
    if column == 0 || column > array.cell_cols() {
        return Err(Error::OutOfRange { index: column, limit: array.cell_cols() });
    }
    let symbols = valid.iter().map(|r| (r, array.symbol(r, column - 1))).collect();
    Ok(DrResult { column, symbols })
}

/// Corrupted copy of the array. Binary devices flip each bit with probability
/// `ber`; true multi-level devices move one level up or down (uniformly,
/// clamped at the end levels).
pub fn inject_bit_errors(array: &CellArray, ber: f64, seed: u64) -> Result<CellArray> {
    if !(0.0..=1.0).contains(&ber) {
        return Err(Error::Config(format!("ber must be in [0, 1], got {ber}")));
    }
    if ber == 0.0 {
        return Ok(array.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut symbols = array.device_symbols();
    let top = (1u32 << array.cfg.bits_per_device()) - 1;
    let binary = array.cfg.bits_per_device() == 1;
    for s in &mut symbols.data {
        if !rng.random_bool(ber) {
            continue;
        }
        *s = if binary {
            *s ^ 1
        } else if rng.random_bool(0.5) {
            (*s + 1).min(top)
        } else {
            s.saturating_sub(1)
        };
    }
    array.from_device_symbols(&symbols)
}

/// Flip each stored bit of a dataset independently with probability `ber`.
pub fn inject_dataset_bit_errors(ds: &EncodedDataset, ber: f64, seed: u64) -> Result<EncodedDataset> {
    let array = CellArray::from_dataset(ds, CellConfig::default())?;
    let corrupted = inject_bit_errors(&array, ber, seed)?;
    let w = ds.width() as usize;
    let words = (0..ds.n_rows())
        .map(|r| (0..w).fold(0u64, |acc, c| (acc << 1) | corrupted.plane(c).contains(r) as u64))
        .collect();
    Ok(EncodedDataset::from_words(ds.fmt, words))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datatypes::{encode, encode_unsigned, Value};

    #[test]
    fn default_model_is_disjoint() {
        DeviceModel::default().validate().unwrap();
        DeviceModel::binary().validate().unwrap();
        let m = DeviceModel { delta_g_ratio: 0.5, ..DeviceModel::default() };
        assert!(m.validate().is_err());
    }

    #[test]
    fn sensing_thresholds() {
        let m = DeviceModel::default();
        for (k, &g) in m.g_targets.iter().enumerate() {
            assert_eq!(sense_symbol(g, &m), k as u32);
        }
        assert_eq!(sense_symbol(3.5, &m), 0);
        assert_eq!(sense_symbol(3.5001, &m), 1);
        assert_eq!(sense_symbol(1000.0, &m), 7);
    }

    #[test]
    fn in_band_start_needs_no_pulse() {
        let m = DeviceModel { init_mean: 2.0, init_sd: 0.0, ..DeviceModel::default() };
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(program_cell(&m, 0, &mut rng), (2.0, 0, true));
    }

    #[test]
    fn noiseless_constant_steps() {
        let m = DeviceModel {
            g_targets: vec![0.0, 10.0],
            delta_g_ratio: 0.05,
            pulse: PulseResponse::constant(2.5),
            noise_sd: 0.0,
            n_max: None,
            init_mean: 0.0,
            init_sd: 0.0,
            seed: 0,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (g, pulses, ok) = program_cell(&m, 1, &mut rng);
        assert!(ok);
        assert_eq!(pulses, 4);
        assert_eq!(g, 10.0);
    }

    #[test]
    fn digit_read_masks_rows() {
        let ds = encode_unsigned(&[0, 1, 0, 1], 1).unwrap();
        let a = CellArray::from_dataset(&ds, CellConfig::default()).unwrap();
        let all = RowSet::full(4);
        let dr = digit_read(&a, 1, &all).unwrap();
        assert_eq!(dr.symbols, vec![(0, 0), (1, 1), (2, 0), (3, 1)]);
        let some = RowSet::from_rows(4, [1, 3]);
        assert_eq!(digit_read(&a, 1, &some).unwrap().symbols, vec![(1, 1), (3, 1)]);
        assert!(digit_read(&a, 2, &all).is_err());
    }

    #[test]
    fn two_bit_cells() {
        let ds = encode_unsigned(&[0b1001], 4).unwrap();
        let cfg = CellConfig::new(2, CellMode::TrueMultilevel).unwrap();
        let a = CellArray::from_dataset(&ds, cfg).unwrap();
        assert_eq!(a.symbol(0, 0), 2);
        assert_eq!(a.symbol(0, 1), 1);
        let pseudo = CellArray::from_dataset(&ds, CellConfig::new(2, CellMode::PseudoMultilevel).unwrap()).unwrap();
        assert_eq!(pseudo.device_cols(), 4);
        assert_eq!(pseudo.symbol(0, 0), 2);
    }

    #[test]
    fn padded_cells() {
        let fmt = NumberFormat::twos_complement(3).unwrap();
        let ds = encode(&[Value::Int(-3)], fmt).unwrap();
        let a = CellArray::from_dataset(&ds, CellConfig::new(2, CellMode::TrueMultilevel).unwrap()).unwrap();
        assert_eq!(a.padded_width(), 4);
        assert_eq!(a.symbol(0, 0), 0b11);
        assert_eq!(a.symbol(0, 1), 0b01);
    }

    #[test]
    fn ber_extremes() {
        let ds = encode_unsigned(&[0b1010, 0b0110], 4).unwrap();
        assert_eq!(inject_dataset_bit_errors(&ds, 0.0, 3).unwrap(), ds);
        let flipped = inject_dataset_bit_errors(&ds, 1.0, 3).unwrap();
        assert_eq!(flipped.words(), &[0b0101, 0b1001]);
    }

    #[test]
    fn programming_round_trip_without_noise() {
        let ds = encode_unsigned(&[0, 7, 3, 5], 3).unwrap();
        let cfg = CellConfig::new(3, CellMode::TrueMultilevel).unwrap();
        let a = CellArray::from_dataset(&ds, cfg).unwrap();
        let m = DeviceModel { noise_sd: 0.0, n_max: None, ..DeviceModel::default() };
        let (sensed, state, stats) = a.program(&m).unwrap();
        assert_eq!(sensed, a);
        assert!(state.outcome.iter().all(|o| *o == ProgOutcome::Success));
        assert_eq!(stats.pfr, 0.0);
    }
}
