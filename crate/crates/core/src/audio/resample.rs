//! Band-limited rational resampling with a Kaiser-windowed sinc kernel.
//!
//! The kernel spans `TAPS` periods of the lower of the two rates and its
//! cutoff sits at `CUTOFF_FRACTION` of the lower Nyquist frequency so the
//! transition band ends before Nyquist. For a conversion `up/down` (reduced
//! ratio) output sample `n` lies at input position `n * down / up`; its
//! fractional part takes one of `up` values, so the kernel is tabulated per
//! phase when `up` is small enough and evaluated on the fly otherwise.

use super::AudioBuffer;
use crate::error::{Error, Result};

const TAPS: usize = 64;
const CUTOFF_FRACTION: f64 = 0.9;
const KAISER_BETA: f64 = 8.0;
const MAX_TABLE_PHASES: u64 = 4096;

/// Converts `buf` to `target_rate`. Same-rate input is returned unchanged.
pub fn resample(buf: &AudioBuffer, target_rate: u32) -> Result<AudioBuffer> {
    if target_rate == 0 {
        return Err(Error::InvalidAudio("target sample rate must be positive".into()));
    }
    let source_rate = buf.sample_rate();
    if source_rate == target_rate {
        return Ok(buf.clone());
    }
    let g = gcd(source_rate as u64, target_rate as u64);
    let up = target_rate as u64 / g;
    let down = source_rate as u64 / g;
    let input = buf.samples();
    let out_len = ((input.len() as u128 * target_rate as u128 + source_rate as u128 / 2)
        / source_rate as u128) as usize;

    let kernel = Kernel::new(source_rate, target_rate);
    let table = (up <= MAX_TABLE_PHASES).then(|| {
        (0..up)
            .map(|p| kernel.taps(p as f64 / up as f64))
            .collect::<Vec<_>>()
    });

    let mut out = Vec::with_capacity(out_len);
    for n in 0..out_len as u64 {
        let pos = n * down;
        let base = (pos / up) as i64;
        let phase = pos % up;
        let owned;
        let taps: &[f64] = match &table {
            Some(t) => &t[phase as usize],
            None => {
                owned = kernel.taps(phase as f64 / up as f64);
                &owned
            }
        };
        let first = base - kernel.reach as i64 + 1;
        let mut acc = 0.0;
        for (i, &w) in taps.iter().enumerate() {
            let k = first + i as i64;
            if k >= 0 && (k as usize) < input.len() {
                acc += w * input[k as usize];
            }
        }
        out.push(acc);
    }
    AudioBuffer::new(out, target_rate)
}

struct Kernel {
    /// cutoff in cycles per input sample
    cutoff: f64,
    /// kernel half-width in input samples
    half_width: f64,
    /// taps on each side of the output position
    reach: usize,
}

impl Kernel {
    fn new(source_rate: u32, target_rate: u32) -> Self {
        let lower = source_rate.min(target_rate) as f64;
        let cutoff = CUTOFF_FRACTION * 0.5 * lower / source_rate as f64;
        let half_width = 0.5 * TAPS as f64 * source_rate as f64 / lower;
        Kernel {
            cutoff,
            half_width,
            reach: half_width.ceil() as usize,
        }
    }

    /// Taps for an output position `frac` samples past an input sample.
    /// Tap `i` weights input `base - reach + 1 + i`. Normalized to unit DC gain.
    fn taps(&self, frac: f64) -> Vec<f64> {
        let mut taps: Vec<f64> = (0..2 * self.reach)
            .map(|i| {
                let d = frac + self.reach as f64 - 1.0 - i as f64;
                self.eval(d)
            })
            .collect();
        let sum: f64 = taps.iter().sum();
        if sum != 0.0 {
            taps.iter_mut().for_each(|t| *t /= sum);
        }
        taps
    }

    fn eval(&self, d: f64) -> f64 {
        let r = d / self.half_width;
        if r.abs() >= 1.0 {
            return 0.0;
        }
        let x = 2.0 * self.cutoff * d;
        let sinc = if x == 0.0 {
            1.0
        } else {
            (std::f64::consts::PI * x).sin() / (std::f64::consts::PI * x)
        };
        2.0 * self.cutoff * sinc * bessel_i0(KAISER_BETA * (1.0 - r * r).sqrt())
            / bessel_i0(KAISER_BETA)
    }
}

fn bessel_i0(x: f64) -> f64 {
    let mut sum = 1.0;
    let mut term = 1.0;
    let q = 0.25 * x * x;
    for k in 1..200 {
        term *= q / (k * k) as f64;
        sum += term;
        if term < sum * 1e-17 {
            break;
        }
    }
    sum
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn tone(freq: f64, rate: u32, secs: f64) -> AudioBuffer {
        let n = (secs * rate as f64) as usize;
        AudioBuffer::new(
            (0..n)
                .map(|i| (2.0 * PI * freq * i as f64 / rate as f64).sin())
                .collect(),
            rate,
        )
        .unwrap()
    }

    /// Amplitude of a single frequency by direct DFT projection.
    fn amplitude_at(x: &[f64], freq: f64, rate: u32) -> f64 {
        let (mut re, mut im) = (0.0, 0.0);
        for (i, v) in x.iter().enumerate() {
            let w = 2.0 * PI * freq * i as f64 / rate as f64;
            re += v * w.cos();
            im += v * w.sin();
        }
        2.0 * (re * re + im * im).sqrt() / x.len() as f64
    }

    fn dominant_bin_hz(x: &[f64], rate: u32) -> f64 {
        let n = x.len();
        let mut best = (0.0, 0usize);
        for k in 1..n / 2 {
            let a = amplitude_at(x, k as f64 * rate as f64 / n as f64, rate);
            if a > best.0 {
                best = (a, k);
            }
        }
        best.1 as f64 * rate as f64 / n as f64
    }

    #[test]
    fn identity_rate_is_bit_equal() {
        let b = tone(440.0, 22050, 0.1);
        assert_eq!(resample(&b, 22050).unwrap(), b);
    }

    #[test]
    fn zero_target_is_error() {
        assert!(resample(&tone(1.0, 8000, 0.01), 0).is_err());
    }

    #[test]
    fn downsampled_tone_keeps_frequency_and_amplitude() {
        let out = resample(&tone(1000.0, 48000, 0.25), 16000).unwrap();
        assert_eq!(out.sample_rate(), 16000);
        assert_eq!(out.len(), 4000);
        // skip the edges where the kernel sees zero padding
        let core = &out.samples()[200..3800];
        assert_eq!(dominant_bin_hz(core, 16000), 1000.0);
        let amp = amplitude_at(core, 1000.0, 16000);
        assert!((amp - 1.0).abs() < 0.01, "amplitude {amp}");
    }

    #[test]
    fn tone_near_new_nyquist_is_rejected() {
        let out = resample(&tone(7900.0, 48000, 0.25), 16000).unwrap();
        let core = &out.samples()[200..3800];
        // 7.9 kHz would alias to itself just below the 8 kHz Nyquist
        let amp = amplitude_at(core, 7900.0, 16000).max(out.rms() * 2f64.sqrt());
        let db = 20.0 * amp.log10();
        assert!(db <= -20.0, "attenuation only {db} dB");
    }

    #[test]
    fn upsampling_preserves_tone() {
        let out = resample(&tone(300.0, 8000, 0.2), 44100).unwrap();
        assert_eq!(out.len(), 8820);
        let core = &out.samples()[1000..7800];
        let amp = amplitude_at(core, 300.0, 44100);
        assert!((amp - 1.0).abs() < 0.01, "amplitude {amp}");
    }

    #[test]
    fn duration_is_preserved_for_awkward_ratios() {
        for (from, to, n) in [(44100, 16000, 4411), (22050, 16000, 1001), (16000, 11025, 777)] {
            let b = AudioBuffer::new(vec![0.1; n], from).unwrap();
            let out = resample(&b, to).unwrap();
            let diff = (out.duration_secs() - b.duration_secs()).abs();
            assert!(diff <= 1.0 / to as f64, "{from}->{to}: {diff}");
        }
    }

    #[test]
    fn large_phase_count_uses_direct_kernel() {
        // 16001/16000 gives 16001 phases, beyond the table limit
        let b = tone(200.0, 16000, 0.05);
        let out = resample(&b, 16001).unwrap();
        assert_eq!(out.len(), 800);
        let mid = &out.samples()[100..700];
        let amp = amplitude_at(mid, 200.0, 16001);
        assert!((amp - 1.0).abs() < 0.02, "amplitude {amp}");
    }
}
