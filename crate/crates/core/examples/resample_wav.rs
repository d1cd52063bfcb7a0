//! Converts a WAV file to the 16 kHz mono float32 format the pipeline runs on.
//!
//!     cargo run --release --example resample_wav -- in.wav out.wav

use bandpitch::audio::{load_wav, resample, write_wav_f32};
use bandpitch::PIPELINE_RATE;

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let (Some(input), Some(output)) = (args.next(), args.next()) else {
        anyhow::bail!("usage: resample_wav <in.wav> <out.wav>");
    };
    let buf = load_wav(&input)?;
    let out = resample(&buf, PIPELINE_RATE)?;
    write_wav_f32(&out, &output)?;
    println!(
        "{input}: {} Hz, {:.3} s -> {output}: {} Hz, {} samples",
        buf.sample_rate(),
        buf.duration_secs(),
        out.sample_rate(),
        out.len()
    );
    Ok(())
}
