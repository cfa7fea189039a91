//! In-situ magnitude pruning: the sorter repeatedly finds the weight with the
//! smallest magnitude until ⌈N·p⌉ weights are masked.

use serde::Serialize;

use crate::crossarray::StrategyConfig;
use crate::datatypes::{encode, Direction, EncodedDataset, FormatKind, NumberFormat, Value};
use crate::device::{inject_bit_errors, CellArray};
use crate::engine::{RunMetrics, SortOptions};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct PruneRequest {
    pub weights: Vec<Value>,
    pub fmt: NumberFormat,
    pub rate: f64,
}

impl PruneRequest {
    pub fn new(weights: Vec<Value>, width: u32, rate: f64) -> Result<Self> {
        let req = PruneRequest { weights, fmt: NumberFormat::sign_magnitude(width)?, rate };
        req.validate()?;
        Ok(req)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.rate) {
            return Err(Error::Config(format!("prune rate must be in [0, 1], got {}", self.rate)));
        }
        if self.fmt.kind != FormatKind::SignMagnitude || self.fmt.width < 2 {
            return Err(Error::Config("pruning expects sign-magnitude weights of at least 2 bits".into()));
        }
        Ok(())
    }

    /// ⌈N·p⌉.
    pub fn mask_len(&self) -> usize {
        let n = self.weights.len();
        ((n as f64 * self.rate).ceil() as usize).min(n)
    }

    /// Magnitude columns of the encoded weights as an unsigned dataset.
    pub fn magnitudes(&self) -> Result<EncodedDataset> {
        let ds = encode(&self.weights, self.fmt)?;
        let fmt = NumberFormat::unsigned(self.fmt.width - 1)?;
        Ok(EncodedDataset::from_words(fmt, ds.words().to_vec()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PruneResult {
    /// Masked indices in selection order.
    pub mask: Vec<usize>,
    /// Selection on the error-free array (same as `mask` when ber is 0).
    pub clean_mask: Vec<usize>,
    /// |mask ∩ clean_mask| / |clean_mask|; 1 for an empty mask.
    pub overlap: f64,
    pub metrics: RunMetrics,
}

pub fn prune_select(req: &PruneRequest, sorter: &StrategyConfig, ber: Option<f64>, seed: u64) -> Result<PruneResult> {
    req.validate()?;
    let limit = req.mask_len();
    let mags = req.magnitudes()?;
    let array = CellArray::from_dataset(&mags, sorter.cell_config()?)?;
    let opts = SortOptions { limit: Some(limit), ..Default::default() };
    let clean = sorter.run_on_array(&array, Direction::MinFirst, &opts)?;
    let ber = ber.unwrap_or(0.0);
    let run = if ber > 0.0 {
        let noisy = inject_bit_errors(&array, ber, seed)?;
        sorter.run_on_array(&noisy, Direction::MinFirst, &opts)?
    } else {
        if !(0.0..=1.0).contains(&ber) {
            return Err(Error::Config(format!("ber must be in [0, 1], got {ber}")));
        }
        clean.clone()
    };
    let overlap = if clean.order.is_empty() {
        1.0
    } else {
        let hits = run.order.iter().filter(|i| clean.order.contains(i)).count();
        hits as f64 / clean.order.len() as f64
    };
    Ok(PruneResult { mask: run.order, clean_mask: clean.order, overlap, metrics: run.metrics })
}

/// `O_j = Σ_{i ∉ mask} I_i W_ij` with `weights[i][j]`.
pub fn masked_mvm(input: &[f64], weights: &[Vec<f64>], mask: &[usize]) -> Result<Vec<f64>> {
    if input.len() != weights.len() {
        return Err(Error::Shape(format!("{} inputs but {} weight rows", input.len(), weights.len())));
    }
    let cols = weights.first().map_or(0, Vec::len);
    if let Some(r) = weights.iter().position(|row| row.len() != cols) {
        return Err(Error::Shape(format!("weight row {r} has {} columns, expected {cols}", weights[r].len())));
    }
    let mut masked = vec![false; input.len()];
    for &i in mask {
        *masked.get_mut(i).ok_or(Error::OutOfRange { index: i, limit: input.len() })? = true;
    }
    let mut out = vec![0.0; cols];
    for (i, row) in weights.iter().enumerate() {
        if masked[i] {
            continue;
        }
        for (o, w) in out.iter_mut().zip(row) {
            *o += input[i] * w;
        }
    }
    Ok(out)
}
