//! Scores an estimated pitch CSV against a reference CSV. Without
//! arguments, scores a made-up estimate with typical error modes.
//!
//!     cargo run --example evaluate_tracks -- est.csv ref.csv

use bandpitch::metrics::{evaluate, REPORT_CSV_HEADER};
use bandpitch::track::read_pitch_track;
use bandpitch::PitchTrack;

fn main() -> anyhow::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (est, reference) = match args.as_slice() {
        [e, r] => (read_pitch_track(e)?, read_pitch_track(r)?),
        _ => {
            let reference: Vec<f64> = (0..100).map(|i| if (20..80).contains(&i) { 150.0 + i as f64 } else { 0.0 }).collect();
            let est: Vec<f64> = reference
                .iter()
                .enumerate()
                .map(|(i, &f)| match i {
                    18..=19 => 160.0,           // early onset
                    30..=34 => 2.0 * f,         // octave error
                    50..=52 => f * 1.01,        // fine error
                    78..=79 => 0.0,             // early offset
                    _ => f,
                })
                .collect();
            (PitchTrack::from_f0(0.0, 0.01, &est)?, PitchTrack::from_f0(0.0, 0.01, &reference)?)
        }
    };
    let report = evaluate(&est, &reference)?;
    print!("{}", report.to_key_value());
    println!("{REPORT_CSV_HEADER}\n{}", report.csv_row("example"));
    Ok(())
}
