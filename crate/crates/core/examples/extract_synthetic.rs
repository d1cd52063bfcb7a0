//! End-to-end extraction on a synthetic voice whose pitch glides across
//! several bands: classify with the centroid baseline, decode, score.
//!
//!     cargo run --release --example extract_synthetic -- [out.csv]

use bandpitch::classifier::{centroid_model, classify_track, CentroidConfig};
use bandpitch::decoder::decode_pitch;
use bandpitch::dsp::FrameGeometry;
use bandpitch::metrics::evaluate;
use bandpitch::{synth, AudioBuffer, PitchTrack, PIPELINE_RATE};

/// Concatenated steady notes; returns the audio and the per-sample f0.
fn melody(notes: &[f64], note_len: usize) -> (AudioBuffer, Vec<f64>) {
    let mut samples = Vec::new();
    let mut f0 = Vec::new();
    for &f in notes {
        samples.extend(synth::harmonic_voice(f, 0.0, PIPELINE_RATE, note_len, 0.4).into_samples());
        f0.extend(std::iter::repeat_n(f, note_len));
    }
    (AudioBuffer::new(samples, PIPELINE_RATE).unwrap(), f0)
}

fn main() -> anyhow::Result<()> {
    let out = std::env::args().nth(1);
    let (buf, f0) = melody(&[90.0, 130.0, 180.0, 240.0, 350.0, 500.0], 8000);
    let model = centroid_model(&CentroidConfig::default())?;
    let labels = classify_track(&model, &buf)?;
    let track = decode_pitch(&buf, &labels)?;

    let g = FrameGeometry::for_rate(PIPELINE_RATE);
    let truth_f0: Vec<f64> = (0..track.len())
        .map(|t| f0[((g.frame_center_secs(t) * PIPELINE_RATE as f64) as usize).min(f0.len() - 1)])
        .collect();
    let truth = PitchTrack::from_f0(g.frame_center_secs(0), g.hop_secs(), &truth_f0)?;

    for (i, e) in track.entries().iter().enumerate().step_by(25) {
        println!("t={:.3}s label={} f0={:.2} Hz (true {:.0})", e.time, labels[i], e.f0, truth_f0[i]);
    }
    print!("{}", evaluate(&track, &truth)?.to_key_value());
    if let Some(path) = out {
        track.write_csv(&path)?;
        println!("wrote {path}");
    }
    Ok(())
}
