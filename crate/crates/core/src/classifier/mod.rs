//! The band classifier: a two-block CNN over five frames of normalized
//! autocorrelation, producing a posterior over `[s1..s8, v]`.
//!
//! ```text
//! grid (context x lags)
//!   -> conv 3x3 same -> ReLU -> batch norm -> max-pool 2x2
//!   -> conv 3x3 same -> ReLU -> batch norm
//!   -> flatten (row, lag, channel) -> dense(9) -> softmax
//! ```
//!
//! Dropout is a training-time layer and does nothing here.

mod centroid;
mod golden;
pub mod layers;
mod weights_file;

pub use centroid::{centroid_model, CentroidConfig};
pub use golden::{parse_golden_fixtures, read_golden_fixtures, GoldenFixture};
pub use weights_file::{load_weights, parse_weights, save_weights, weights_to_bytes};

use crate::audio::AudioBuffer;
use crate::bands::{BandLabel, NUM_CLASSES};
use crate::dsp::{autocorr, frame_signal, normalize_acf, FrameSeries};
use crate::error::{Error, Result};
use layers::{conv3x3_same, dense, flatten_hwc, max_pool2, relu, softmax, BatchNorm, FeatureMap};

/// Frames of context fed to the classifier (t-2 ..= t+2).
pub const CONTEXT: usize = 5;
/// Autocorrelation lags per frame; covers the longest period, 16000/50.
pub const INPUT_LAGS: usize = 320;
pub const CHANNELS: usize = 64;

/// A named tensor as stored in the weight file.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    pub dims: Vec<usize>,
    pub data: Vec<f64>,
}

impl Tensor {
    pub fn new(dims: Vec<usize>, data: Vec<f64>) -> Self {
        debug_assert_eq!(dims.iter().product::<usize>(), data.len());
        Tensor { dims, data }
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
struct Conv {
    kernel: Vec<f64>,
    bias: Vec<f64>,
}

/// All classifier parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelWeights {
    input_lags: usize,
    context: usize,
    channels: usize,
    conv1: Conv,
    bn1: BatchNorm,
    conv2: Conv,
    bn2: BatchNorm,
    dense_weight: Vec<f64>,
    dense_bias: Vec<f64>,
}

pub(crate) const TENSOR_NAMES: [&str; 16] = [
    "conv1.kernel",
    "conv1.bias",
    "bn1.gamma",
    "bn1.beta",
    "bn1.mean",
    "bn1.var",
    "bn1.eps",
    "conv2.kernel",
    "conv2.bias",
    "bn2.gamma",
    "bn2.beta",
    "bn2.mean",
    "bn2.var",
    "bn2.eps",
    "dense.weight",
    "dense.bias",
];

impl ModelWeights {
    /// Assembles a model from named tensors, checking every shape against
    /// `input_lags`/`context` and the channel count implied by `conv1.kernel`.
    pub fn from_tensors(input_lags: usize, context: usize, tensors: Vec<(String, Tensor)>) -> Result<Self> {
        let mut slots: Vec<Option<Tensor>> = vec![None; TENSOR_NAMES.len()];
        for (name, t) in tensors {
            let idx = TENSOR_NAMES
                .iter()
                .position(|n| *n == name)
                .ok_or_else(|| Error::Invariant(format!("unknown tensor {name}")))?;
            if slots[idx].is_some() {
                return Err(Error::Invariant(format!("duplicate tensor {name}")));
            }
            if t.data.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFinite(name));
            }
            slots[idx] = Some(t);
        }
        let mut take = |name: &str| -> Result<Tensor> {
            let idx = TENSOR_NAMES.iter().position(|n| *n == name).unwrap();
            slots[idx].take().ok_or_else(|| Error::MissingTensor(name.to_string()))
        };

        if context < 2 || input_lags < 2 {
            return Err(Error::Invariant(format!(
                "context {context} and input_lags {input_lags} must both be at least 2"
            )));
        }
        let conv1_kernel = take("conv1.kernel")?;
        let channels = conv1_kernel.dims.first().copied().unwrap_or(0);
        if channels == 0 {
            return Err(Error::Invariant("conv1.kernel has no output channels".into()));
        }
        let expect = |name: &str, t: &Tensor, dims: &[usize]| -> Result<()> {
            if t.dims != dims {
                return Err(Error::Shape {
                    name: name.to_string(),
                    expected: dims.to_vec(),
                    found: t.dims.clone(),
                });
            }
            Ok(())
        };
        expect("conv1.kernel", &conv1_kernel, &[channels, 1, 3, 3])?;

        let mut vector = |name: &str, len: usize| -> Result<Vec<f64>> {
            let t = take(name)?;
            expect(name, &t, &[len])?;
            Ok(t.data)
        };
        let conv1_bias = vector("conv1.bias", channels)?;
        let bn1 = BatchNorm {
            gamma: vector("bn1.gamma", channels)?,
            beta: vector("bn1.beta", channels)?,
            mean: vector("bn1.mean", channels)?,
            var: vector("bn1.var", channels)?,
            eps: vector("bn1.eps", 1)?[0],
        };
        let conv2_bias = vector("conv2.bias", channels)?;
        let bn2 = BatchNorm {
            gamma: vector("bn2.gamma", channels)?,
            beta: vector("bn2.beta", channels)?,
            mean: vector("bn2.mean", channels)?,
            var: vector("bn2.var", channels)?,
            eps: vector("bn2.eps", 1)?[0],
        };
        let dense_bias = vector("dense.bias", NUM_CLASSES)?;
        let conv2_kernel = take("conv2.kernel")?;
        expect("conv2.kernel", &conv2_kernel, &[channels, channels, 3, 3])?;
        let flatten = (context / 2) * (input_lags / 2) * channels;
        let dense_weight = take("dense.weight")?;
        expect("dense.weight", &dense_weight, &[flatten, NUM_CLASSES])?;

        for (which, bn) in [("bn1", &bn1), ("bn2", &bn2)] {
            if bn.eps.is_nan() || bn.eps <= 0.0 {
                return Err(Error::Invariant(format!("{which}.eps must be positive, got {}", bn.eps)));
            }
            if let Some(c) = bn.var.iter().position(|v| v.is_nan() || *v <= 0.0) {
                return Err(Error::Invariant(format!(
                    "{which}.var[{c}] must be positive, got {}",
                    bn.var[c]
                )));
            }
        }

        Ok(ModelWeights {
            input_lags,
            context,
            channels,
            conv1: Conv {
                kernel: conv1_kernel.data,
                bias: conv1_bias,
            },
            bn1,
            conv2: Conv {
                kernel: conv2_kernel.data,
                bias: conv2_bias,
            },
            bn2,
            dense_weight: dense_weight.data,
            dense_bias,
        })
    }

    /// Named tensors in canonical order.
    pub fn tensors(&self) -> Vec<(String, Tensor)> {
        let c = self.channels;
        let v = |x: &[f64]| Tensor::new(vec![x.len()], x.to_vec());
        let named = vec![
            ("conv1.kernel", Tensor::new(vec![c, 1, 3, 3], self.conv1.kernel.clone())),
            ("conv1.bias", v(&self.conv1.bias)),
            ("bn1.gamma", v(&self.bn1.gamma)),
            ("bn1.beta", v(&self.bn1.beta)),
            ("bn1.mean", v(&self.bn1.mean)),
            ("bn1.var", v(&self.bn1.var)),
            ("bn1.eps", v(&[self.bn1.eps])),
            ("conv2.kernel", Tensor::new(vec![c, c, 3, 3], self.conv2.kernel.clone())),
            ("conv2.bias", v(&self.conv2.bias)),
            ("bn2.gamma", v(&self.bn2.gamma)),
            ("bn2.beta", v(&self.bn2.beta)),
            ("bn2.mean", v(&self.bn2.mean)),
            ("bn2.var", v(&self.bn2.var)),
            ("bn2.eps", v(&[self.bn2.eps])),
            (
                "dense.weight",
                Tensor::new(vec![self.flatten_dim(), NUM_CLASSES], self.dense_weight.clone()),
            ),
            ("dense.bias", v(&self.dense_bias)),
        ];
        named.into_iter().map(|(n, t)| (n.to_string(), t)).collect()
    }

    pub fn input_lags(&self) -> usize {
        self.input_lags
    }

    pub fn context(&self) -> usize {
        self.context
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    /// Length of the flattened representation feeding the dense layer.
    pub fn flatten_dim(&self) -> usize {
        (self.context / 2) * (self.input_lags / 2) * self.channels
    }

    pub fn parameter_count(&self) -> usize {
        self.tensors().iter().map(|(_, t)| t.len()).sum()
    }

    /// Everything up to and including the flatten.
    pub fn embed(&self, x: &FeatureInput) -> Result<Vec<f64>> {
        if x.context != self.context || x.lags != self.input_lags {
            return Err(Error::InputShape {
                rows: x.context,
                cols: x.lags,
                want_rows: self.context,
                want_cols: self.input_lags,
            });
        }
        let input = FeatureMap {
            channels: 1,
            height: x.context,
            width: x.lags,
            data: x.grid.clone(),
        };
        let mut a = conv3x3_same(&input, &self.conv1.kernel, &self.conv1.bias);
        relu(&mut a);
        self.bn1.apply(&mut a);
        let a = max_pool2(&a);
        let mut b = conv3x3_same(&a, &self.conv2.kernel, &self.conv2.bias);
        relu(&mut b);
        self.bn2.apply(&mut b);
        Ok(flatten_hwc(&b))
    }

    pub fn logits(&self, x: &FeatureInput) -> Result<[f64; NUM_CLASSES]> {
        let flat = self.embed(x)?;
        let y = dense(&flat, &self.dense_weight, &self.dense_bias);
        Ok(y.try_into().expect("nine outputs"))
    }
}

/// One classifier input: `context` rows of normalized ACF, `lags` columns.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureInput {
    context: usize,
    lags: usize,
    grid: Vec<f64>,
}

impl FeatureInput {
    pub fn new(context: usize, lags: usize, grid: Vec<f64>) -> Result<Self> {
        if grid.len() != context * lags {
            return Err(Error::InputShape {
                rows: grid.len() / lags.max(1),
                cols: lags,
                want_rows: context,
                want_cols: lags,
            });
        }
        Ok(FeatureInput { context, lags, grid })
    }

    pub fn context(&self) -> usize {
        self.context
    }

    pub fn lags(&self) -> usize {
        self.lags
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.grid[i * self.lags..(i + 1) * self.lags]
    }
}

/// Normalized ACF of one frame truncated (or zero-padded) to `lags` values.
pub fn acf_feature_row(frame: &[f64], lags: usize) -> Vec<f64> {
    let mut row = normalize_acf(&autocorr(frame)).into_values();
    row.resize(lags, 0.0);
    row
}

fn assemble(rows: &[Vec<f64>], t: usize, context: usize, lags: usize) -> FeatureInput {
    let half = (context / 2) as isize;
    let last = rows.len() as isize - 1;
    let mut grid = Vec::with_capacity(context * lags);
    for d in -half..(context as isize - half) {
        let i = (t as isize + d).clamp(0, last) as usize;
        grid.extend_from_slice(&rows[i]);
    }
    FeatureInput {
        context,
        lags,
        grid,
    }
}

/// Classifier input centred on frame `t`, with edge frames repeated past
/// either end of the series.
pub fn build_input(series: &FrameSeries, t: usize, input_lags: usize) -> FeatureInput {
    build_input_with_context(series, t, input_lags, CONTEXT)
}

pub fn build_input_with_context(series: &FrameSeries, t: usize, input_lags: usize, context: usize) -> FeatureInput {
    assert!(t < series.len(), "frame {t} out of range");
    let half = (context / 2) as isize;
    let last = series.len() as isize - 1;
    let grid = (0..context as isize)
        .flat_map(|d| {
            let i = (t as isize + d - half).clamp(0, last) as usize;
            acf_feature_row(series.frame(i), input_lags)
        })
        .collect();
    FeatureInput {
        context,
        lags: input_lags,
        grid,
    }
}

/// Softmax posterior over `[s1..s8, v]`.
pub fn predict(w: &ModelWeights, x: &FeatureInput) -> Result<[f64; NUM_CLASSES]> {
    let p = softmax(&w.logits(x)?);
    Ok(p.try_into().expect("nine outputs"))
}

/// Index of the largest posterior; ties go to the lower index.
pub fn argmax_label(posterior: &[f64; NUM_CLASSES]) -> BandLabel {
    let best = (1..NUM_CLASSES).fold(0, |b, i| if posterior[i] > posterior[b] { i } else { b });
    BandLabel::from_index(best).expect("index below NUM_CLASSES")
}

/// Posterior for every frame of a 16 kHz buffer.
pub fn posteriors_track(w: &ModelWeights, buf: &AudioBuffer) -> Result<Vec<[f64; NUM_CLASSES]>> {
    let series = frame_signal(buf)?;
    let rows: Vec<Vec<f64>> = series
        .frames()
        .iter()
        .map(|f| acf_feature_row(f, w.input_lags))
        .collect();
    (0..rows.len())
        .map(|t| predict(w, &assemble(&rows, t, w.context, w.input_lags)))
        .collect()
}

/// Most probable band label per frame.
pub fn classify_track(w: &ModelWeights, buf: &AudioBuffer) -> Result<Vec<BandLabel>> {
    Ok(posteriors_track(w, buf)?.iter().map(argmax_label).collect())
}

#[cfg(test)]
mod tests;
