//! Benchmark dataset generation and loading.

use std::path::Path;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::datatypes::{parse_dataset, NumberFormat, Value};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DatasetKind {
    Random,
    Normal,
    Clustered,
    File,
}

impl DatasetKind {
    pub fn name(self) -> &'static str {
        match self {
            DatasetKind::Random => "random",
            DatasetKind::Normal => "normal",
            DatasetKind::Clustered => "clustered",
            DatasetKind::File => "file",
        }
    }
}

impl FromStr for DatasetKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(DatasetKind::Random),
            "normal" => Ok(DatasetKind::Normal),
            "clustered" => Ok(DatasetKind::Clustered),
            "file" => Ok(DatasetKind::File),
            other => Err(Error::Config(format!("unknown dataset kind '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetSpec {
    pub kind: DatasetKind,
    pub width: u32,
    pub n: usize,
    pub seed: u64,
}

fn sample_in_range<R: Rng>(rng: &mut R, dist: Normal<f64>, max: u64) -> u64 {
    loop {
        let x = dist.sample(rng).round();
        if x >= 0.0 && x <= max as f64 {
            return x as u64;
        }
    }
}

/// Generate `n` unsigned `width`-bit values from `rng`.
pub fn gen_values<R: Rng>(kind: DatasetKind, width: u32, n: usize, rng: &mut R) -> Result<Vec<u64>> {
    if width == 0 || width > 64 {
        return Err(Error::Config(format!("width must be in 1..=64, got {width}")));
    }
    let max = if width == 64 { u64::MAX } else { (1u64 << width) - 1 };
    match kind {
        DatasetKind::Random => Ok((0..n).map(|_| rng.random_range(0..=max)).collect()),
        DatasetKind::Normal => {
            let mean = 2f64.powi(width as i32 - 1);
            let dist = Normal::new(mean, mean / 3.0).expect("positive sd");
            Ok((0..n).map(|_| sample_in_range(rng, dist, max)).collect())
        }
        DatasetKind::Clustered => {
            let (centers, sd) = match width {
                8 => ([100.0, 200.0], 10.0),
                32 => ([2f64.powi(15), 2f64.powi(25)], 2f64.powi(13)),
                w => return Err(Error::Unsupported(format!("clustered datasets are defined for W=8 and W=32, not W={w}"))),
            };
            let dists = centers.map(|c| Normal::new(c, sd).expect("positive sd"));
            Ok((0..n)
                .map(|_| {
                    let c = rng.random_range(0..2);
                    sample_in_range(rng, dists[c], max)
                })
                .collect())
        }
        DatasetKind::File => Err(Error::Unsupported("file datasets are loaded, not generated".into())),
    }
}

pub fn gen_dataset(spec: &DatasetSpec) -> Result<Vec<u64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    gen_values(spec.kind, spec.width, spec.n, &mut rng)
}

pub fn load_dataset(path: &Path) -> Result<(NumberFormat, Vec<Value>)> {
    let text = std::fs::read_to_string(path)?;
    parse_dataset(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let spec = DatasetSpec { kind: DatasetKind::Normal, width: 16, n: 100, seed: 9 };
        assert_eq!(gen_dataset(&spec).unwrap(), gen_dataset(&spec).unwrap());
        let other = DatasetSpec { seed: 10, ..spec.clone() };
        assert_ne!(gen_dataset(&spec).unwrap(), gen_dataset(&other).unwrap());
    }

    #[test]
    fn values_in_range() {
        for kind in [DatasetKind::Random, DatasetKind::Normal, DatasetKind::Clustered] {
            let v = gen_dataset(&DatasetSpec { kind, width: 8, n: 5000, seed: 1 }).unwrap();
            assert!(v.iter().all(|&x| x <= 255));
        }
        let v = gen_dataset(&DatasetSpec { kind: DatasetKind::Random, width: 64, n: 10, seed: 1 }).unwrap();
        assert_eq!(v.len(), 10);
    }

    #[test]
    fn clustered_needs_known_width() {
        let spec = DatasetSpec { kind: DatasetKind::Clustered, width: 16, n: 4, seed: 0 };
        assert!(matches!(gen_dataset(&spec), Err(Error::Unsupported(_))));
        let spec = DatasetSpec { kind: DatasetKind::File, width: 8, n: 4, seed: 0 };
        assert!(gen_dataset(&spec).is_err());
    }
}
