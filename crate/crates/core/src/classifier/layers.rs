//! Inference kernels on channel-major feature maps.

/// `channels x height x width`, row-major within each channel.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMap {
    pub channels: usize,
    pub height: usize,
    pub width: usize,
    pub data: Vec<f64>,
}

impl FeatureMap {
    pub fn zeros(channels: usize, height: usize, width: usize) -> Self {
        FeatureMap {
            channels,
            height,
            width,
            data: vec![0.0; channels * height * width],
        }
    }

    pub fn at(&self, c: usize, i: usize, j: usize) -> f64 {
        self.data[(c * self.height + i) * self.width + j]
    }

    fn plane(&self, c: usize) -> &[f64] {
        let n = self.height * self.width;
        &self.data[c * n..(c + 1) * n]
    }
}

/// 3x3 cross-correlation, stride 1, zero "same" padding.
///
/// `kernel` is laid out `[out][in][3][3]`. Zero taps are skipped, which
/// makes sparse hand-built kernels cheap.
pub fn conv3x3_same(input: &FeatureMap, kernel: &[f64], bias: &[f64]) -> FeatureMap {
    let (cin, h, w) = (input.channels, input.height, input.width);
    let cout = bias.len();
    assert_eq!(kernel.len(), cout * cin * 9, "kernel shape");
    let mut out = FeatureMap::zeros(cout, h, w);
    for (o, plane) in out.data.chunks_exact_mut(h * w).enumerate() {
        plane.fill(bias[o]);
        for c in 0..cin {
            let src = input.plane(c);
            let taps = &kernel[(o * cin + c) * 9..(o * cin + c + 1) * 9];
            for (t, &k) in taps.iter().enumerate() {
                if k == 0.0 {
                    continue;
                }
                let (di, dj) = (t / 3, t % 3);
                // output (i, j) reads input (i + di - 1, j + dj - 1)
                let i_lo = 1usize.saturating_sub(di);
                let i_hi = (h + 1 - di).min(h);
                let j_lo = 1usize.saturating_sub(dj);
                let j_hi = (w + 1 - dj).min(w);
                if j_lo >= j_hi {
                    continue;
                }
                for i in i_lo..i_hi {
                    let si = i + di - 1;
                    let dst = &mut plane[i * w + j_lo..i * w + j_hi];
                    let s = &src[si * w + j_lo + dj - 1..si * w + j_hi + dj - 1];
                    for (d, x) in dst.iter_mut().zip(s) {
                        *d += k * x;
                    }
                }
            }
        }
    }
    out
}

pub fn relu(map: &mut FeatureMap) {
    map.data.iter_mut().for_each(|v| *v = v.max(0.0));
}

/// Inference batch norm with running statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct BatchNorm {
    pub gamma: Vec<f64>,
    pub beta: Vec<f64>,
    pub mean: Vec<f64>,
    pub var: Vec<f64>,
    pub eps: f64,
}

impl BatchNorm {
    /// `gamma = 1, beta = 0, mean = 0, var = 1`.
    pub fn identity(channels: usize, eps: f64) -> Self {
        BatchNorm {
            gamma: vec![1.0; channels],
            beta: vec![0.0; channels],
            mean: vec![0.0; channels],
            var: vec![1.0; channels],
            eps,
        }
    }

    pub fn apply(&self, map: &mut FeatureMap) {
        let n = map.height * map.width;
        for (c, plane) in map.data.chunks_exact_mut(n).enumerate() {
            let scale = self.gamma[c] / (self.var[c] + self.eps).sqrt();
            let shift = self.beta[c] - self.mean[c] * scale;
            plane.iter_mut().for_each(|v| *v = *v * scale + shift);
        }
    }
}

/// 2x2 max pooling with stride 2; odd trailing rows/columns are dropped.
pub fn max_pool2(input: &FeatureMap) -> FeatureMap {
    let (h, w) = (input.height / 2, input.width / 2);
    let mut out = FeatureMap::zeros(input.channels, h, w);
    for c in 0..input.channels {
        for i in 0..h {
            for j in 0..w {
                let m = input
                    .at(c, 2 * i, 2 * j)
                    .max(input.at(c, 2 * i, 2 * j + 1))
                    .max(input.at(c, 2 * i + 1, 2 * j))
                    .max(input.at(c, 2 * i + 1, 2 * j + 1));
                out.data[(c * h + i) * w + j] = m;
            }
        }
    }
    out
}

/// Flattens in (row, column, channel) order.
pub fn flatten_hwc(map: &FeatureMap) -> Vec<f64> {
    let mut out = Vec::with_capacity(map.data.len());
    for i in 0..map.height {
        for j in 0..map.width {
            for c in 0..map.channels {
                out.push(map.at(c, i, j));
            }
        }
    }
    out
}

/// `x . W + b` with `W` stored `[inputs][outputs]`.
pub fn dense(x: &[f64], weight: &[f64], bias: &[f64]) -> Vec<f64> {
    let outputs = bias.len();
    assert_eq!(weight.len(), x.len() * outputs, "dense shape");
    let mut y = bias.to_vec();
    for (xi, row) in x.iter().zip(weight.chunks_exact(outputs)) {
        if *xi == 0.0 {
            continue;
        }
        for (yo, w) in y.iter_mut().zip(row) {
            *yo += xi * w;
        }
    }
    y
}

pub fn softmax(logits: &[f64]) -> Vec<f64> {
    let m = logits.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let e: Vec<f64> = logits.iter().map(|v| (v - m).exp()).collect();
    let s: f64 = e.iter().sum();
    e.into_iter().map(|v| v / s).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Straight nested loops over output position, channels and kernel taps
    /// with explicit bounds checks for the zero padding.
    fn conv_oracle(input: &FeatureMap, kernel: &[f64], bias: &[f64]) -> FeatureMap {
        let (cin, h, w) = (input.channels, input.height, input.width);
        let cout = bias.len();
        let mut out = FeatureMap::zeros(cout, h, w);
        for o in 0..cout {
            for i in 0..h {
                for j in 0..w {
                    let mut acc = bias[o];
                    for c in 0..cin {
                        for di in 0..3 {
                            for dj in 0..3 {
                                let si = i as isize + di as isize - 1;
                                let sj = j as isize + dj as isize - 1;
                                if si < 0 || sj < 0 || si >= h as isize || sj >= w as isize {
                                    continue;
                                }
                                acc += kernel[((o * cin + c) * 3 + di) * 3 + dj] * input.at(c, si as usize, sj as usize);
                            }
                        }
                    }
                    out.data[(o * h + i) * w + j] = acc;
                }
            }
        }
        out
    }

    fn pool_oracle(input: &FeatureMap) -> FeatureMap {
        let (h, w) = (input.height / 2, input.width / 2);
        let mut out = FeatureMap::zeros(input.channels, h, w);
        for c in 0..input.channels {
            for i in 0..h {
                for j in 0..w {
                    let mut m = f64::NEG_INFINITY;
                    for a in 0..2 {
                        for b in 0..2 {
                            m = m.max(input.at(c, 2 * i + a, 2 * j + b));
                        }
                    }
                    out.data[(c * h + i) * w + j] = m;
                }
            }
        }
        out
    }

    fn arb_map(max_c: usize, max_hw: usize) -> impl Strategy<Value = FeatureMap> {
        (1..=max_c, 1..=max_hw, 1..=max_hw).prop_flat_map(|(c, h, w)| {
            prop::collection::vec(-2.0f64..2.0, c * h * w).prop_map(move |data| FeatureMap {
                channels: c,
                height: h,
                width: w,
                data,
            })
        })
    }

    proptest! {
        #[test]
        fn conv_matches_oracle(
            input in arb_map(3, 6),
            cout in 1usize..4,
            seed in prop::collection::vec(-1.0f64..1.0, 4 * 3 * 9 + 4),
        ) {
            let kernel: Vec<f64> = seed[..cout * input.channels * 9].to_vec();
            let bias: Vec<f64> = seed[seed.len() - cout..].to_vec();
            let fast = conv3x3_same(&input, &kernel, &bias);
            let slow = conv_oracle(&input, &kernel, &bias);
            prop_assert_eq!((fast.channels, fast.height, fast.width), (cout, input.height, input.width));
            for (a, b) in fast.data.iter().zip(&slow.data) {
                prop_assert!((a - b).abs() <= 1e-10);
            }
        }

        #[test]
        fn pool_matches_oracle(input in arb_map(4, 8)) {
            let fast = max_pool2(&input);
            prop_assert_eq!((fast.height, fast.width), (input.height / 2, input.width / 2));
            prop_assert_eq!(fast, pool_oracle(&input));
        }

        #[test]
        fn softmax_is_a_distribution(logits in prop::collection::vec(-50.0f64..50.0, 9)) {
            let p = softmax(&logits);
            let s: f64 = p.iter().sum();
            prop_assert!((s - 1.0).abs() < 1e-12);
            prop_assert!(p.iter().all(|&v| (0.0..=1.0).contains(&v)));
        }
    }

    #[test]
    fn flatten_order_is_row_column_channel() {
        let m = FeatureMap {
            channels: 2,
            height: 1,
            width: 2,
            data: vec![1.0, 2.0, 10.0, 20.0],
        };
        assert_eq!(flatten_hwc(&m), vec![1.0, 10.0, 2.0, 20.0]);
    }

    #[test]
    fn batch_norm_formula() {
        let mut m = FeatureMap {
            channels: 1,
            height: 1,
            width: 2,
            data: vec![3.0, 5.0],
        };
        let bn = BatchNorm {
            gamma: vec![2.0],
            beta: vec![1.0],
            mean: vec![1.0],
            var: vec![3.0],
            eps: 1.0,
        };
        bn.apply(&mut m);
        assert_eq!(m.data, vec![3.0, 5.0]);
    }
}
