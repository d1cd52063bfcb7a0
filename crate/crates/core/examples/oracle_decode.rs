//! Decodes a synthetic sawtooth with labels taken from its known pitch,
//! bypassing the classifier, and prints the decoder's per-frame internals.
//!
//!     cargo run --example oracle_decode -- [f0_hz]

use bandpitch::bands::oracle_frame_labels;
use bandpitch::decoder::decode_pitch_with_diagnostics;
use bandpitch::dsp::FrameGeometry;
use bandpitch::metrics::evaluate;
use bandpitch::{synth, PitchTrack, PIPELINE_RATE};

fn main() -> anyhow::Result<()> {
    let f0: f64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(110.0);
    let buf = synth::sawtooth(f0, 0.0, PIPELINE_RATE, 8000, 0.5);
    let g = FrameGeometry::for_rate(PIPELINE_RATE);
    let n = g.frame_count(buf.len());
    let truth = PitchTrack::from_f0(g.frame_center_secs(0), g.hop_secs(), &vec![f0; n])?;

    let labels = oracle_frame_labels(&truth, g, n)?;
    let decoded = decode_pitch_with_diagnostics(&buf, &labels)?;
    print!("{}", decoded.diagnostics_csv().lines().take(8).collect::<Vec<_>>().join("\n"));
    println!("\n...");
    for e in decoded.track.entries().iter().step_by(10) {
        println!("t={:.3}s f0={:.3} Hz", e.time, e.f0);
    }
    print!("{}", evaluate(&decoded.track, &truth)?.to_key_value());
    Ok(())
}
