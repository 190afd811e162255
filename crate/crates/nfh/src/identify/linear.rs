//! Max-margin linear classifier over hashed features.
//!
//! Averaged stochastic subgradient descent on L2-regularized hinge loss
//! (C = 1.0), a fixed epoch count and seeded shuffling: a solver-agnostic,
//! reproducible stand-in for a default-configured linear SVM. The averaged
//! iterate is computed exactly with a global scale factor and per-coordinate
//! prefix sums, so regularization never costs a dense pass.
//!
//! Model file (`.nfhl`): magic `NFHL`, format version u32, hash bits u32,
//! little-endian f32 weight array of length 2^bits, f32 bias.

use std::collections::HashMap;
use std::io::{Read, Write};
use std::path::Path;

use super::features::FeatureVector;
use crate::rng::Rng;
use crate::{NfhError, Result};

const MAGIC: &[u8; 4] = b"NFHL";
const FORMAT_VERSION: u32 = 1;

/// Trained linear model; decision is `sign(w . x + b)`.
#[derive(Debug, Clone)]
pub struct LinearModel {
    pub weights: Vec<f32>,
    pub bias: f32,
    pub feature_space_bits: u32,
}

/// Training hyperparameters. The learning rate decays as
/// `lr0 / (1 + t * decay)` over steps t.
#[derive(Debug, Clone)]
pub struct TrainOptions {
    pub epochs: usize,
    pub lr0: f64,
    pub lr_decay: f64,
    pub c: f64,
    pub seed: u64,
    pub hash_bits: u32,
}

impl Default for TrainOptions {
    fn default() -> Self {
        TrainOptions {
            epochs: 10,
            lr0: 0.1,
            lr_decay: 1e-4,
            c: 1.0,
            seed: 13,
            hash_bits: super::features::DEFAULT_HASH_BITS,
        }
    }
}

#[derive(Default, Clone, Copy)]
struct Coord {
    /// Unscaled stored value; true weight = scale * value.
    value: f64,
    /// Step index after which `value` was last current.
    synced_at: usize,
    /// Sum over steps 1..=synced_at of the true weight.
    acc: f64,
}

/// Train on labeled feature vectors. Errors when one class is missing.
pub fn train_identifier(
    dataset: &[(FeatureVector, bool)],
    options: &TrainOptions,
) -> Result<LinearModel> {
    if dataset.is_empty()
        || dataset.iter().all(|(_, y)| *y)
        || dataset.iter().all(|(_, y)| !*y)
    {
        return Err(NfhError::Data(
            "training data must contain both classes".into(),
        ));
    }

    let n = dataset.len();
    let lambda = 1.0 / (options.c * n as f64);
    let total_steps = options.epochs * n;

    let mut coords: HashMap<u32, Coord> = HashMap::new();
    let mut scale = 1.0f64;
    // scale_prefix[t] = sum over steps 1..=t of the scale after that step.
    let mut scale_prefix: Vec<f64> = Vec::with_capacity(total_steps + 1);
    scale_prefix.push(0.0);

    let mut bias = 0.0f64;
    let mut bias_sum = 0.0f64;

    let mut order: Vec<usize> = (0..n).collect();
    let mut rng = Rng::new(options.seed);
    let mut step = 0usize;

    for _epoch in 0..options.epochs {
        rng.shuffle(&mut order);
        for &idx in &order {
            step += 1;
            let (features, label) = &dataset[idx];
            let y = if *label { 1.0 } else { -1.0 };

            // Current margin under the lazily scaled weights.
            let dot: f64 = features
                .indices
                .iter()
                .map(|i| coords.get(i).map(|c| c.value).unwrap_or(0.0))
                .sum::<f64>()
                * scale;
            let margin = y * (dot + bias);

            let eta = options.lr0 / (1.0 + step as f64 * options.lr_decay);
            let factor = 1.0 - eta * lambda;
            if factor <= 0.0 {
                return Err(NfhError::Data(format!(
                    "learning rate {eta} too large for C={} over {n} examples",
                    options.c
                )));
            }
            scale *= factor;

            if margin < 1.0 {
                for &i in &features.indices {
                    let coord = coords.entry(i).or_default();
                    // Catch the running average up through step-1 (the
                    // value only shrank by the global scale since then).
                    coord.acc +=
                        coord.value * (scale_prefix[step - 1] - scale_prefix[coord.synced_at]);
                    coord.value += eta * y / scale;
                    coord.synced_at = step - 1;
                }
                bias += eta * y;
            }
            scale_prefix.push(scale_prefix[step - 1] + scale);
            bias_sum += bias;
        }
    }

    // Finalize the average over all steps.
    let dim = 1usize << options.hash_bits;
    let mut weights = vec![0.0f32; dim];
    for (i, coord) in coords {
        let acc = coord.acc
            + coord.value * (scale_prefix[total_steps] - scale_prefix[coord.synced_at]);
        weights[i as usize] = (acc / total_steps as f64) as f32;
    }

    Ok(LinearModel {
        weights,
        bias: (bias_sum / total_steps as f64) as f32,
        feature_space_bits: options.hash_bits,
    })
}

/// Classify one feature vector; the margin is returned for thresholding.
/// A zero margin breaks negative.
pub fn classify_span(model: &LinearModel, features: &FeatureVector) -> (bool, f64) {
    let margin = features
        .indices
        .iter()
        .map(|&i| model.weights[i as usize] as f64)
        .sum::<f64>()
        + model.bias as f64;
    (margin > 0.0, margin)
}

impl LinearModel {
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut file = std::fs::File::create(path)
            .map_err(|e| NfhError::io(path.display().to_string(), e))?;
        let mut buf = Vec::with_capacity(12 + self.weights.len() * 4 + 4);
        buf.extend_from_slice(MAGIC);
        buf.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
        buf.extend_from_slice(&self.feature_space_bits.to_le_bytes());
        for w in &self.weights {
            buf.extend_from_slice(&w.to_le_bytes());
        }
        buf.extend_from_slice(&self.bias.to_le_bytes());
        file.write_all(&buf)
            .map_err(|e| NfhError::io(path.display().to_string(), e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let mut bytes = Vec::new();
        std::fs::File::open(path)
            .map_err(|e| NfhError::validation("model", format!("cannot open {}: {e}", path.display())))?
            .read_to_end(&mut bytes)
            .map_err(|e| NfhError::io(path.display().to_string(), e))?;
        let mut r = ByteReader::new(&bytes);
        if r.take(4)? != MAGIC {
            return Err(NfhError::format("not an NFHL model file"));
        }
        let version = r.u32()?;
        if version != FORMAT_VERSION {
            return Err(NfhError::format(format!(
                "unsupported NFHL version {version}"
            )));
        }
        let bits = r.u32()?;
        if bits > 30 {
            return Err(NfhError::format(format!("implausible hash width {bits}")));
        }
        let dim = 1usize << bits;
        let mut weights = Vec::with_capacity(dim);
        for _ in 0..dim {
            weights.push(r.f32()?);
        }
        let bias = r.f32()?;
        if !r.at_end() {
            return Err(NfhError::format("trailing bytes in NFHL model file"));
        }
        Ok(LinearModel { weights, bias, feature_space_bits: bits })
    }
}

/// Little-endian cursor shared by the binary model formats.
pub(crate) struct ByteReader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> ByteReader<'a> {
    pub fn new(bytes: &'a [u8]) -> Self {
        ByteReader { bytes, pos: 0 }
    }

    pub fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.pos + n > self.bytes.len() {
            return Err(NfhError::format("truncated binary file"));
        }
        let out = &self.bytes[self.pos..self.pos + n];
        self.pos += n;
        Ok(out)
    }

    pub fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    pub fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    pub fn f32(&mut self) -> Result<f32> {
        Ok(f32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    pub fn at_end(&self) -> bool {
        self.pos == self.bytes.len()
    }
}
