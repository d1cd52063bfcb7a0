//! Loads an HF0W weight file and runs it on a few synthetic frames.
//!
//!     cargo run --release --example inspect_model -- model.hf0w

use bandpitch::classifier::{argmax_label, build_input_with_context, load_weights, predict};
use bandpitch::dsp::frame_signal;
use bandpitch::{synth, PIPELINE_RATE};

fn main() -> anyhow::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/parity_model.hf0w").into());
    let w = load_weights(&path)?;
    println!(
        "{path}: {} lags x {} frames, {} channels, {} parameters",
        w.input_lags(),
        w.context(),
        w.channels(),
        w.parameter_count()
    );
    for (name, t) in w.tensors() {
        println!("  {name:<14} {:?}", t.dims);
    }
    for f in [70.0, 120.0, 260.0, 700.0] {
        let series = frame_signal(&synth::harmonic_voice(f, 0.0, PIPELINE_RATE, 4000, 0.4))?;
        let x = build_input_with_context(&series, 10, w.input_lags(), w.context());
        let p = predict(&w, &x)?;
        let shown: Vec<String> = p.iter().map(|v| format!("{v:.3}")).collect();
        println!("{f:>5} Hz -> {} [{}]", argmax_label(&p), shown.join(" "));
    }
    Ok(())
}
