//! Shows why the period is picked on the double autocorrelation: on a
//! harmonic-rich frame the plain ACF has strong peaks at sub-multiples of
//! the period, which the second autocorrelation suppresses.
//!
//!     cargo run --example double_acf -- [f0_hz]

use bandpitch::dsp::{autocorr, double_autocorr, estimate_period, find_t0, normalize_acf, LagRange};
use bandpitch::filterbank::{apply_filter, design_band_filter};
use bandpitch::{synth, BandLabel, PIPELINE_RATE};

fn main() -> anyhow::Result<()> {
    let f0: f64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(110.0);
    let label = BandLabel::from_frequency(f0)?;
    let buf = synth::pulse_train(f0, 0.0, PIPELINE_RATE, 4800, 0.5);
    let filtered = apply_filter(&design_band_filter(label, PIPELINE_RATE)?, buf.samples());
    let range = label.lag_range(PIPELINE_RATE)?;
    let wide = LagRange::new(10, 400);

    for (name, x) in [("raw", buf.samples()), ("band-filtered", &filtered[..])] {
        let frame = &x[3200..4000];
        let r = normalize_acf(&autocorr(frame));
        let rr = normalize_acf(&double_autocorr(&autocorr(frame)));
        println!("{name} frame, true period {:.2} samples", PIPELINE_RATE as f64 / f0);
        if name == "raw" {
            println!("  ACF peak in 10..400:        lag {}", find_t0(&r, wide));
            println!("  double ACF peak in 10..400: lag {}", find_t0(&rr, wide));
        }
        if let Some(est) = estimate_period(frame, range) {
            println!("  {label} range {}..={}: t0 {} refined {:.3} -> {:.3} Hz", range.min, range.max, est.t0, est.lag, PIPELINE_RATE as f64 / est.lag);
        }
    }
    Ok(())
}
