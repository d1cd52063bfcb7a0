//! Gross pitch error against SNR for a sawtooth in white noise, decoded
//! with oracle labels.
//!
//!     cargo run --release --example noise_robustness -- [f0_hz]

use bandpitch::audio::mix_noise;
use bandpitch::bands::oracle_frame_labels;
use bandpitch::decoder::decode_pitch;
use bandpitch::dsp::FrameGeometry;
use bandpitch::metrics::{evaluate, summarize};
use bandpitch::{synth, PitchTrack, PIPELINE_RATE};

fn main() -> anyhow::Result<()> {
    let f0: f64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(200.0);
    let len = PIPELINE_RATE as usize;
    let g = FrameGeometry::for_rate(PIPELINE_RATE);
    let n = g.frame_count(len);
    let truth = PitchTrack::from_f0(g.frame_center_secs(0), g.hop_secs(), &vec![f0; n])?;
    let labels = oracle_frame_labels(&truth, g, n)?;
    let clean = synth::sawtooth(f0, 0.0, PIPELINE_RATE, len, 0.5);

    println!("snr_db  gpe_mean%  gpe_var  fpe_mean%  rpa_mean%");
    for snr in [-10.0, -5.0, 0.0, 5.0, 10.0, 20.0] {
        let reports = (0..10)
            .map(|seed| {
                let noise = synth::white_noise(len, 0.3, PIPELINE_RATE, seed);
                let track = decode_pitch(&mix_noise(&clean, &noise, snr)?, &labels)?;
                evaluate(&track, &truth)
            })
            .collect::<bandpitch::Result<Vec<_>>>()?;
        let s = summarize(&reports);
        println!(
            "{snr:>6.1}  {:>9.2}  {:>7.5}  {:>9.3}  {:>9.2}",
            100.0 * s.mean[1],
            s.variance[1],
            s.mean[2],
            100.0 * s.mean[6]
        );
    }
    Ok(())
}
