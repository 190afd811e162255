//! Resolver training: per-example Adam updates, epoch-wise seeded
//! shuffling, early stopping on dev head-accuracy.

use super::{GradientSet, ResolverConfig, ResolverParams};
use crate::corpus::{EmbeddingTable, Example};
use crate::eval::head_correct;
use crate::parallel;
use crate::rng::{hash64, Rng};
use crate::{NfhError, Result};

/// Optimizer and schedule settings.
#[derive(Debug, Clone, serde::Serialize)]
pub struct TrainConfig {
    pub resolver: ResolverConfig,
    pub lr: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
    pub max_epochs: usize,
    /// Epochs without a dev improvement before stopping.
    pub patience: usize,
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            resolver: ResolverConfig::default(),
            lr: 0.001,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
            max_epochs: 100,
            patience: 10,
            seed: 13,
        }
    }
}

/// What happened during training.
#[derive(Debug, Clone)]
pub struct TrainReport {
    /// Dev head-accuracy after each completed epoch.
    pub dev_accuracy: Vec<f64>,
    /// Mean training loss per epoch.
    pub epoch_losses: Vec<f64>,
    pub best_epoch: usize,
    pub best_dev_accuracy: f64,
    pub epochs_run: usize,
}

struct Adam {
    m: Vec<Vec<f64>>,
    v: Vec<Vec<f64>>,
    t: u64,
}

impl Adam {
    fn new(shapes: &[usize]) -> Self {
        Adam {
            m: shapes.iter().map(|&n| vec![0.0; n]).collect(),
            v: shapes.iter().map(|&n| vec![0.0; n]).collect(),
            t: 0,
        }
    }

    fn step(&mut self, params: &mut ResolverParams, grads: &GradientSet, cfg: &TrainConfig) {
        self.t += 1;
        let bc1 = 1.0 - cfg.beta1.powi(self.t as i32);
        let bc2 = 1.0 - cfg.beta2.powi(self.t as i32);
        for (ti, tensor) in params.tensors.iter_mut().enumerate() {
            let g = &grads.grads[ti];
            let m = &mut self.m[ti];
            let v = &mut self.v[ti];
            for j in 0..g.len() {
                m[j] = cfg.beta1 * m[j] + (1.0 - cfg.beta1) * g[j];
                v[j] = cfg.beta2 * v[j] + (1.0 - cfg.beta2) * g[j] * g[j];
                let m_hat = m[j] / bc1;
                let v_hat = v[j] / bc2;
                tensor.data[j] -= cfg.lr * m_hat / (v_hat.sqrt() + cfg.epsilon);
            }
        }
    }
}

/// Head accuracy of `params` over a labeled split (deterministic fan-out).
pub fn dev_head_accuracy(params: &ResolverParams, dev: &[Example]) -> f64 {
    if dev.is_empty() {
        return 0.0;
    }
    let correct: usize = parallel::ordered_map(dev, |ex| {
        let Ok(pred) = params.resolve(ex, ex.anchor) else {
            return 0usize;
        };
        match &ex.gold {
            Some(gold) => head_correct(ex, &pred, gold) as usize,
            None => 0,
        }
    })
    .into_iter()
    .sum();
    correct as f64 / dev.len() as f64
}

/// Train from scratch; returns the best-dev checkpoint and the trajectory.
pub fn train_resolver(
    train: &[Example],
    dev: &[Example],
    embeddings: &EmbeddingTable,
    cfg: &TrainConfig,
) -> Result<(ResolverParams, TrainReport)> {
    if train.is_empty() || dev.is_empty() {
        return Err(NfhError::Data("train and dev splits must be non-empty".into()));
    }
    for ex in train {
        if ex.gold.is_none() {
            return Err(NfhError::Data(format!(
                "training example `{}` has no gold label",
                ex.id
            )));
        }
    }

    let mut params = ResolverParams::init(cfg.resolver.clone(), embeddings, cfg.seed);
    let mut adam = Adam::new(&params.tensor_shapes());
    let base_rng = Rng::new(cfg.seed);

    let mut best_params = params.clone();
    let mut best_acc = f64::NEG_INFINITY;
    let mut best_epoch = 0usize;
    let mut stale = 0usize;
    let mut dev_accuracy = Vec::new();
    let mut epoch_losses = Vec::new();

    let mut order: Vec<usize> = (0..train.len()).collect();
    for epoch in 1..=cfg.max_epochs {
        let mut rng = base_rng.fork(epoch as u64);
        rng.shuffle(&mut order);

        let mut epoch_loss = 0.0;
        for (step, &idx) in order.iter().enumerate() {
            let ex = &train[idx];
            let dropout_seed = hash64(
                cfg.seed,
                format!("dropout/{epoch}/{step}").as_bytes(),
            );
            let (loss, grads) = params.loss_and_gradients(ex, dropout_seed)?;
            if !loss.is_finite() {
                return Err(NfhError::Diverged { epoch, example_id: ex.id.clone() });
            }
            epoch_loss += loss;
            adam.step(&mut params, &grads, cfg);
        }
        epoch_losses.push(epoch_loss / train.len() as f64);

        let acc = dev_head_accuracy(&params, dev);
        dev_accuracy.push(acc);
        if acc > best_acc {
            best_acc = acc;
            best_epoch = epoch;
            best_params = params.clone();
            stale = 0;
        } else {
            stale += 1;
            if stale >= cfg.patience {
                break;
            }
        }
    }

    let epochs_run = dev_accuracy.len();
    Ok((
        best_params,
        TrainReport {
            dev_accuracy,
            epoch_losses,
            best_epoch,
            best_dev_accuracy: best_acc,
            epochs_run,
        },
    ))
}
