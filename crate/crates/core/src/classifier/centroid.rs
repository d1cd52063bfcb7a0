//! A training-free baseline model.
//!
//! The convolutions are fixed: the first block copies the ACF grid into two
//! channels holding its positive and negative parts, the second block passes
//! those two channels through. The dense layer then scores each class by
//! squared distance to a class centroid of embedded synthetic examples:
//! `logit_k = <x, mu_k> - |mu_k|^2 / 2`, which ranks classes exactly as
//! nearest-centroid would. Unvoiced examples are white noise and silence.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::layers::BatchNorm;
use super::{build_input_with_context, ModelWeights, Tensor, CHANNELS, CONTEXT, INPUT_LAGS};
use crate::bands::{BandLabel, NUM_CLASSES};
use crate::dsp::frame_signal;
use crate::error::{Error, Result};
use crate::{synth, PIPELINE_RATE};

#[derive(Debug, Clone)]
pub struct CentroidConfig {
    pub input_lags: usize,
    pub context: usize,
    pub channels: usize,
    pub examples_per_class: usize,
    pub seed: u64,
}

impl Default for CentroidConfig {
    fn default() -> Self {
        CentroidConfig {
            input_lags: INPUT_LAGS,
            context: CONTEXT,
            channels: CHANNELS,
            examples_per_class: 32,
            seed: 0x5eed,
        }
    }
}

const BN_EPS: f64 = 1e-5;
/// Frames per synthetic example; the centre frame is embedded.
const EXAMPLE_FRAMES: usize = 21;

fn feature_extractor(cfg: &CentroidConfig) -> Result<ModelWeights> {
    let c = cfg.channels;
    if c < 2 {
        return Err(Error::Invariant("centroid model needs at least 2 channels".into()));
    }
    let center = 4;
    let mut k1 = vec![0.0; c * 9];
    k1[center] = 1.0;
    k1[9 + center] = -1.0;
    let mut k2 = vec![0.0; c * c * 9];
    k2[center] = 1.0;
    k2[(c + 1) * 9 + center] = 1.0;
    // gamma cancels the eps so batch norm is an exact identity
    let mut bn = BatchNorm::identity(c, BN_EPS);
    bn.gamma = vec![(1.0 + BN_EPS).sqrt(); c];
    let flatten = (cfg.context / 2) * (cfg.input_lags / 2) * c;
    let v = |x: Vec<f64>| Tensor::new(vec![x.len()], x);
    let bn_tensors = |p: &str| {
        vec![
            (format!("{p}.gamma"), v(bn.gamma.clone())),
            (format!("{p}.beta"), v(bn.beta.clone())),
            (format!("{p}.mean"), v(bn.mean.clone())),
            (format!("{p}.var"), v(bn.var.clone())),
            (format!("{p}.eps"), v(vec![bn.eps])),
        ]
    };
    let mut tensors = vec![
        ("conv1.kernel".to_string(), Tensor::new(vec![c, 1, 3, 3], k1)),
        ("conv1.bias".to_string(), v(vec![0.0; c])),
        ("conv2.kernel".to_string(), Tensor::new(vec![c, c, 3, 3], k2)),
        ("conv2.bias".to_string(), v(vec![0.0; c])),
        (
            "dense.weight".to_string(),
            Tensor::new(vec![flatten, NUM_CLASSES], vec![0.0; flatten * NUM_CLASSES]),
        ),
        ("dense.bias".to_string(), v(vec![0.0; NUM_CLASSES])),
    ];
    tensors.extend(bn_tensors("bn1"));
    tensors.extend(bn_tensors("bn2"));
    ModelWeights::from_tensors(cfg.input_lags, cfg.context, tensors)
}

fn example(rng: &mut StdRng, label: BandLabel) -> Vec<f64> {
    let len = (EXAMPLE_FRAMES - 1) * 160 + 800;
    let amp = rng.random_range(0.05..0.9);
    let Ok((lo, hi)) = label.edges() else {
        return if rng.random_bool(0.2) {
            vec![0.0; len]
        } else {
            synth::white_noise(len, amp, PIPELINE_RATE, rng.random()).into_samples()
        };
    };
    let f = rng.random_range(lo.ln()..hi.ln()).exp();
    let phase = rng.random_range(0.0..std::f64::consts::TAU);
    let buf = match rng.random_range(0..3) {
        0 => synth::tone(f, phase, PIPELINE_RATE, len, amp),
        1 => synth::harmonic_voice(f, phase, PIPELINE_RATE, len, amp),
        _ => synth::sawtooth(f, phase, PIPELINE_RATE, len, amp),
    };
    buf.into_samples()
}

/// Builds the nearest-centroid baseline from seeded synthetic examples.
pub fn centroid_model(cfg: &CentroidConfig) -> Result<ModelWeights> {
    let base = feature_extractor(cfg)?;
    let flatten = base.flatten_dim();
    let mut rng = StdRng::seed_from_u64(cfg.seed);
    let mut centroids = vec![vec![0.0; flatten]; NUM_CLASSES];
    for label in BandLabel::ALL {
        for _ in 0..cfg.examples_per_class {
            let x = crate::AudioBuffer::new(example(&mut rng, label), PIPELINE_RATE)?;
            let series = frame_signal(&x)?;
            let input = build_input_with_context(&series, EXAMPLE_FRAMES / 2, cfg.input_lags, cfg.context);
            let emb = base.embed(&input)?;
            for (c, e) in centroids[label.index()].iter_mut().zip(emb) {
                *c += e / cfg.examples_per_class as f64;
            }
        }
    }
    let mut weight = vec![0.0; flatten * NUM_CLASSES];
    for (k, mu) in centroids.iter().enumerate() {
        for (i, m) in mu.iter().enumerate() {
            weight[i * NUM_CLASSES + k] = *m;
        }
    }
    let bias: Vec<f64> = centroids
        .iter()
        .map(|mu| -0.5 * mu.iter().map(|m| m * m).sum::<f64>())
        .collect();
    let tensors = base
        .tensors()
        .into_iter()
        .map(|(name, t)| match name.as_str() {
            "dense.weight" => (name, Tensor::new(t.dims, weight.clone())),
            "dense.bias" => (name, Tensor::new(t.dims, bias.clone())),
            _ => (name, t),
        })
        .collect();
    ModelWeights::from_tensors(cfg.input_lags, cfg.context, tensors)
}
