//! Builds the training-free nearest-centroid classifier, saves it as HF0W
//! and reports per-band accuracy on fresh synthetic voices.
//!
//!     cargo run --release --example build_centroid_model -- [out.hf0w]

use bandpitch::bands::BAND_EDGES;
use bandpitch::classifier::{centroid_model, classify_track, save_weights, CentroidConfig};
use bandpitch::{synth, BandLabel, PIPELINE_RATE};

fn main() -> anyhow::Result<()> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "centroid.hf0w".into());
    let model = centroid_model(&CentroidConfig::default())?;
    save_weights(&model, &out)?;
    println!("wrote {out} ({} parameters)", model.parameter_count());

    let mut total = (0, 0);
    for (b, &(lo, hi)) in BAND_EDGES.iter().enumerate() {
        let want = BandLabel::from_index(b).unwrap();
        let mut hits = (0, 0);
        for frac in [0.15, 0.5, 0.85] {
            let f = lo * (hi / lo).powf(frac);
            let buf = synth::harmonic_voice(f, 1.0, PIPELINE_RATE, 16000, 0.4);
            let labels = classify_track(&model, &buf)?;
            let interior = &labels[3..labels.len() - 5];
            hits.0 += interior.iter().filter(|&&l| l == want).count();
            hits.1 += interior.len();
        }
        println!("{want}: {:.1} % of frames", 100.0 * hits.0 as f64 / hits.1 as f64);
        total = (total.0 + hits.0, total.1 + hits.1);
    }
    let noise = synth::white_noise(16000, 0.2, PIPELINE_RATE, 9);
    let labels = classify_track(&model, &noise)?;
    let v = labels.iter().filter(|&&l| l == BandLabel::V).count();
    println!("v (white noise): {:.1} % of frames", 100.0 * v as f64 / labels.len() as f64);
    println!("voiced overall: {:.1} %", 100.0 * total.0 as f64 / total.1 as f64);
    Ok(())
}
