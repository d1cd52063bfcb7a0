use super::*;
use crate::synth;

// exactly representable in f32 so files round-trip bit for bit
const EPS: f64 = 1.0 / 65536.0;

/// Model with delta kernels, identity batch norm, zero dense weights and
/// the given dense bias.
fn crafted(lags: usize, context: usize, channels: usize, bias: [f64; NUM_CLASSES]) -> ModelWeights {
    let c = channels;
    let mut k1 = vec![0.0; c * 9];
    for o in 0..c {
        k1[o * 9 + 4] = 1.0;
    }
    let mut k2 = vec![0.0; c * c * 9];
    for o in 0..c {
        k2[(o * c + o) * 9 + 4] = 1.0;
    }
    let v = |x: Vec<f64>| Tensor::new(vec![x.len()], x);
    let flatten = (context / 2) * (lags / 2) * c;
    let mut t = vec![
        ("conv1.kernel".to_string(), Tensor::new(vec![c, 1, 3, 3], k1)),
        ("conv1.bias".to_string(), v(vec![0.0; c])),
        ("conv2.kernel".to_string(), Tensor::new(vec![c, c, 3, 3], k2)),
        ("conv2.bias".to_string(), v(vec![0.0; c])),
        (
            "dense.weight".to_string(),
            Tensor::new(vec![flatten, NUM_CLASSES], vec![0.0; flatten * NUM_CLASSES]),
        ),
        ("dense.bias".to_string(), v(bias.to_vec())),
    ];
    for p in ["bn1", "bn2"] {
        t.push((format!("{p}.gamma"), v(vec![1.0; c])));
        t.push((format!("{p}.beta"), v(vec![0.0; c])));
        t.push((format!("{p}.mean"), v(vec![0.0; c])));
        t.push((format!("{p}.var"), v(vec![1.0; c])));
        t.push((format!("{p}.eps"), v(vec![EPS])));
    }
    ModelWeights::from_tensors(lags, context, t).unwrap()
}

fn ramp_input(context: usize, lags: usize) -> FeatureInput {
    let grid = (0..context * lags).map(|i| ((i * 37) % 11) as f64 / 10.0 - 0.5).collect();
    FeatureInput::new(context, lags, grid).unwrap()
}

#[test]
fn identity_weights_give_softmax_of_bias() {
    let mut bias = [0.0; NUM_CLASSES];
    bias[0] = 2f64.ln();
    let w = crafted(320, 5, 64, bias);
    assert_eq!(w.flatten_dim(), 2 * 160 * 64);
    let p = predict(&w, &ramp_input(5, 320)).unwrap();
    assert!((p[0] - 0.2).abs() < 1e-12, "{p:?}");
    for v in &p[1..] {
        assert!((v - 0.1).abs() < 1e-12);
    }
}

#[test]
fn tie_between_first_band_and_unvoiced_goes_to_first_band() {
    let mut bias = [-1.0; NUM_CLASSES];
    bias[0] = 3.0;
    bias[8] = 3.0;
    let w = crafted(16, 5, 2, bias);
    let p = predict(&w, &ramp_input(5, 16)).unwrap();
    assert_eq!(p[0], p[8]);
    assert_eq!(argmax_label(&p), BandLabel::S1);
    let buf = synth::tone(120.0, 0.0, 16000, 1600, 0.5);
    let labels = classify_track(&w, &buf).unwrap();
    assert_eq!(labels.len(), 10);
    assert!(labels.iter().all(|&l| l == BandLabel::S1));
}

#[test]
fn delta_kernels_embed_relu_of_pooled_input() {
    let w = crafted(8, 4, 1, [0.0; NUM_CLASSES]);
    let x = ramp_input(4, 8);
    let emb = w.embed(&x).unwrap();
    assert_eq!(emb.len(), 2 * 4);
    let scale = 1.0 / (1.0 + EPS).sqrt();
    for i in 0..2 {
        for j in 0..4 {
            let m = [(0, 0), (0, 1), (1, 0), (1, 1)]
                .iter()
                .map(|(a, b)| x.row(2 * i + a)[2 * j + b].max(0.0) * scale)
                .fold(f64::NEG_INFINITY, f64::max);
            assert!((emb[i * 4 + j] - m * scale).abs() < 1e-12);
        }
    }
}

#[test]
fn dimension_mismatch_is_error() {
    let w = crafted(16, 5, 2, [0.0; NUM_CLASSES]);
    assert!(matches!(predict(&w, &ramp_input(5, 17)), Err(Error::InputShape { .. })));
    assert!(matches!(predict(&w, &ramp_input(3, 16)), Err(Error::InputShape { .. })));
    assert!(FeatureInput::new(5, 16, vec![0.0; 79]).is_err());
}

#[test]
fn predictions_are_deterministic() {
    let w = crafted(32, 5, 4, [0.1, 0.2, 0.3, 0.0, -0.1, 0.5, 0.0, 0.0, 1.0]);
    let x = ramp_input(5, 32);
    let a = predict(&w, &x).unwrap();
    let b = predict(&w, &x).unwrap();
    assert_eq!(a.map(f64::to_bits), b.map(f64::to_bits));
}

#[test]
fn build_input_clamps_at_edges() {
    let buf = synth::white_noise(1600, 0.3, 16000, 5);
    let series = frame_signal(&buf).unwrap();
    assert_eq!(series.len(), 10);
    let x = build_input(&series, 0, 320);
    let row = |i: usize| acf_feature_row(series.frame(i), 320);
    for (r, frame) in [0usize, 0, 0, 1, 2].iter().enumerate() {
        assert_eq!(x.row(r), row(*frame).as_slice(), "row {r}");
    }
    let x = build_input(&series, 9, 320);
    for (r, frame) in [7usize, 8, 9, 9, 9].iter().enumerate() {
        assert_eq!(x.row(r), row(*frame).as_slice(), "row {r}");
    }
}

#[test]
fn silent_signal_gives_zero_grid() {
    let buf = AudioBuffer::new(vec![0.0; 3200], 16000).unwrap();
    let series = frame_signal(&buf).unwrap();
    let x = build_input(&series, 10, 320);
    assert!(x.grid().iter().all(|&v| v == 0.0));
}

#[test]
fn tone_rows_peak_at_period() {
    let buf = synth::tone(200.0, 0.3, 16000, 3200, 0.5);
    let series = frame_signal(&buf).unwrap();
    let x = build_input(&series, 8, 320);
    for r in 0..5 {
        let row = x.row(r);
        assert_eq!(row[0], 1.0);
        assert!(row[79] < row[80] && row[80] > row[81], "row {r}");
    }
}

fn tensors_with(w: &ModelWeights, name: &str, f: impl FnOnce(&mut Tensor)) -> Vec<(String, Tensor)> {
    let mut t = w.tensors();
    let slot = t.iter_mut().find(|(n, _)| n == name).unwrap();
    f(&mut slot.1);
    t
}

#[test]
fn weight_invariants() {
    let w = crafted(16, 5, 2, [0.0; NUM_CLASSES]);
    let bad_var = tensors_with(&w, "bn2.var", |t| t.data[1] = 0.0);
    assert!(matches!(ModelWeights::from_tensors(16, 5, bad_var), Err(Error::Invariant(_))));
    let bad_eps = tensors_with(&w, "bn1.eps", |t| t.data[0] = 0.0);
    assert!(matches!(ModelWeights::from_tensors(16, 5, bad_eps), Err(Error::Invariant(_))));
    let nan = tensors_with(&w, "dense.bias", |t| t.data[3] = f64::NAN);
    assert!(matches!(ModelWeights::from_tensors(16, 5, nan), Err(Error::NonFinite(_))));
    let shape = tensors_with(&w, "conv2.kernel", |t| {
        t.dims = vec![2, 1, 3, 6];
    });
    assert!(matches!(ModelWeights::from_tensors(16, 5, shape), Err(Error::Shape { .. })));
    let mut missing = w.tensors();
    missing.retain(|(n, _)| n != "bn1.mean");
    assert!(matches!(ModelWeights::from_tensors(16, 5, missing), Err(Error::MissingTensor(_))));
    // dense shape follows the header's lag count
    assert!(matches!(
        ModelWeights::from_tensors(18, 5, w.tensors()),
        Err(Error::Shape { .. })
    ));
}

#[test]
fn weight_file_round_trip_and_errors() {
    let w = crafted(16, 5, 3, [0.25, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.0]);
    let bytes = weights_to_bytes(&w);
    let back = parse_weights(&bytes).unwrap();
    assert_eq!(back, w);
    assert_eq!(back.parameter_count(), w.tensors().iter().map(|(_, t)| t.len()).sum::<usize>());

    let truncated = &bytes[..bytes.len() - 3];
    match parse_weights(truncated) {
        Err(e @ Error::UnexpectedEof(_)) => assert!(e.to_string().contains("unexpected end of file")),
        other => panic!("{other:?}"),
    }
    let mut magic = bytes.clone();
    magic[0] = b'X';
    assert!(matches!(parse_weights(&magic), Err(Error::BadMagic(_))));
    let mut version = bytes.clone();
    version[4] = 2;
    assert!(matches!(parse_weights(&version), Err(Error::Version(2))));
    let mut header_lags = bytes.clone();
    header_lags[8] = 20;
    assert!(matches!(parse_weights(&header_lags), Err(Error::Shape { .. })));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.hf0w");
    save_weights(&w, &path).unwrap();
    assert_eq!(load_weights(&path).unwrap(), w);
    assert!(matches!(load_weights(dir.path().join("none")), Err(Error::Io { .. })));
}

#[test]
fn zero_variance_in_file_is_invariant_error() {
    let w = crafted(16, 5, 2, [0.0; NUM_CLASSES]);
    let mut t = w.tensors();
    let var = t.iter_mut().find(|(n, _)| n == "bn1.var").unwrap();
    var.1.data[0] = 0.0;
    // serialize by hand since the model type refuses to hold it
    let mut bytes = Vec::new();
    bytes.extend_from_slice(b"HF0W");
    for v in [1u32, 16, 5, t.len() as u32] {
        bytes.extend_from_slice(&v.to_le_bytes());
    }
    for (name, tensor) in &t {
        bytes.extend_from_slice(&(name.len() as u16).to_le_bytes());
        bytes.extend_from_slice(name.as_bytes());
        bytes.push(tensor.dims.len() as u8);
        for d in &tensor.dims {
            bytes.extend_from_slice(&(*d as u32).to_le_bytes());
        }
        for v in &tensor.data {
            bytes.extend_from_slice(&(*v as f32).to_le_bytes());
        }
    }
    assert!(matches!(parse_weights(&bytes), Err(Error::Invariant(_))));
}

#[test]
fn centroid_model_shapes() {
    let w = centroid_model(&CentroidConfig {
        examples_per_class: 4,
        ..CentroidConfig::default()
    })
    .unwrap();
    assert_eq!(w.flatten_dim(), 2 * 160 * 64);
    assert_eq!((w.context(), w.input_lags(), w.channels()), (5, 320, 64));
    // silence embeds to zero, where the unvoiced centroid is closest
    let buf = AudioBuffer::new(vec![0.0; 4000], 16000).unwrap();
    let labels = classify_track(&w, &buf).unwrap();
    assert!(labels.iter().all(|&l| l == BandLabel::V));
}

#[test]
fn centroid_model_labels_a_voice() {
    let w = centroid_model(&CentroidConfig::default()).unwrap();
    let buf = synth::harmonic_voice(250.0, 0.4, 16000, 16000, 0.3);
    let labels = classify_track(&w, &buf).unwrap();
    let interior = &labels[2..labels.len() - 5];
    let hits = interior.iter().filter(|&&l| l == BandLabel::S5).count();
    assert!(hits as f64 >= 0.9 * interior.len() as f64, "{hits}/{}", interior.len());
}
