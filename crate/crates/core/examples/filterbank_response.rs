//! Prints each band filter's magnitude response on a log-frequency grid
//! and its measured steady-state gain for a few test tones.
//!
//!     cargo run --example filterbank_response

use bandpitch::bands::BAND_EDGES;
use bandpitch::filterbank::{apply_filter, design_band_filter};
use bandpitch::{synth, BandLabel, PIPELINE_RATE};

fn steady_gain_db(label: BandLabel, f: f64) -> anyhow::Result<f64> {
    let filt = design_band_filter(label, PIPELINE_RATE)?;
    let x = synth::tone(f, 0.0, PIPELINE_RATE, 16000, 1.0).into_samples();
    let y = apply_filter(&filt, &x);
    let ms = |v: &[f64]| v[1600..].iter().map(|s| s * s).sum::<f64>();
    Ok(10.0 * (ms(&y) / ms(&x)).log10())
}

fn main() -> anyhow::Result<()> {
    let grid: Vec<f64> = (0..=12).map(|k| 25.0 * 2f64.powf(k as f64 / 2.5)).collect();
    print!("band    ");
    for f in &grid {
        print!("{f:>7.0}");
    }
    println!();
    for (b, &(lo, hi)) in BAND_EDGES.iter().enumerate() {
        let label = BandLabel::from_index(b).unwrap();
        let filt = design_band_filter(label, PIPELINE_RATE)?;
        print!("{label} {:>4.0}-", lo);
        for f in &grid {
            print!("{:>7.1}", filt.magnitude_db(*f).max(-99.9));
        }
        println!();
        println!(
            "   order {}, max pole radius {:.5}; tones: centre {:.2} dB, lo/2 {:.1} dB, 2*hi {:.1} dB",
            filt.order(),
            filt.max_pole_radius(),
            steady_gain_db(label, (lo * hi).sqrt())?,
            steady_gain_db(label, lo / 2.0)?,
            steady_gain_db(label, 2.0 * hi)?,
        );
    }
    Ok(())
}
