//! Deterministic test signals with known pitch: pure tones, band-limited
//! sawtooth and pulse trains, vibrato, and seeded white noise.

use std::f64::consts::PI;

use rand::rngs::StdRng;
use rand::SeedableRng;
use rand_distr::{Distribution, StandardNormal};

use crate::audio::AudioBuffer;

fn buffer(samples: Vec<f64>, rate: u32) -> AudioBuffer {
    AudioBuffer::new(samples, rate).expect("synthesized samples are finite")
}

/// `amp * sin(2 pi f n / rate + phase)`.
pub fn tone(freq: f64, phase: f64, rate: u32, len: usize, amp: f64) -> AudioBuffer {
    let w = 2.0 * PI * freq / rate as f64;
    buffer((0..len).map(|n| amp * (w * n as f64 + phase).sin()).collect(), rate)
}

/// Sum of harmonics `k = 1..` below Nyquist with the given per-harmonic weight.
fn additive(freq: f64, phase: f64, rate: u32, len: usize, weight: impl Fn(usize) -> f64) -> Vec<f64> {
    let nyquist = rate as f64 / 2.0;
    let count = ((nyquist - 1.0) / freq).floor().max(1.0) as usize;
    let w = 2.0 * PI * freq / rate as f64;
    let weights: Vec<f64> = (1..=count).map(&weight).collect();
    (0..len)
        .map(|n| {
            let base = w * n as f64 + phase;
            weights
                .iter()
                .enumerate()
                .map(|(i, a)| a * ((i + 1) as f64 * base).sin())
                .sum()
        })
        .collect()
}

/// Band-limited sawtooth (harmonic amplitudes 1/k), peak close to `amp`.
pub fn sawtooth(freq: f64, phase: f64, rate: u32, len: usize, amp: f64) -> AudioBuffer {
    let x = additive(freq, phase, rate, len, |k| {
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        sign * 2.0 / (PI * k as f64)
    });
    buffer(x.into_iter().map(|v| amp * v).collect(), rate)
}

/// Band-limited pulse train: every harmonic below Nyquist at equal amplitude.
pub fn pulse_train(freq: f64, phase: f64, rate: u32, len: usize, amp: f64) -> AudioBuffer {
    let count = ((rate as f64 / 2.0 - 1.0) / freq).floor().max(1.0);
    // cosine phase puts every harmonic's maximum at the same instant
    let x = additive(freq, phase + PI / 2.0, rate, len, |_| 1.0 / count);
    buffer(x.into_iter().map(|v| amp * v).collect(), rate)
}

/// Harmonic tone with a gently falling spectral envelope, a crude stand-in
/// for a voiced vowel.
pub fn harmonic_voice(freq: f64, phase: f64, rate: u32, len: usize, amp: f64) -> AudioBuffer {
    let x = additive(freq, phase, rate, len, |k| 1.0 / (k as f64).powf(1.5));
    buffer(x.into_iter().map(|v| amp * v).collect(), rate)
}

/// Instantaneous frequency of [`vibrato`] at time `t` seconds.
pub fn vibrato_frequency(carrier: f64, depth: f64, rate_hz: f64, t: f64) -> f64 {
    carrier * (1.0 + depth * (2.0 * PI * rate_hz * t).sin())
}

/// Sine whose frequency follows [`vibrato_frequency`].
pub fn vibrato(carrier: f64, depth: f64, rate_hz: f64, rate: u32, len: usize, amp: f64) -> AudioBuffer {
    let fs = rate as f64;
    // closed-form phase integral of the instantaneous frequency
    let wv = 2.0 * PI * rate_hz;
    let x = (0..len)
        .map(|n| {
            let t = n as f64 / fs;
            let phase = 2.0 * PI * carrier * (t + depth * (1.0 - (wv * t).cos()) / wv);
            amp * phase.sin()
        })
        .collect();
    buffer(x, rate)
}

/// Gaussian white noise with the given RMS, reproducible from `seed`.
pub fn white_noise(len: usize, rms: f64, rate: u32, seed: u64) -> AudioBuffer {
    let mut rng = StdRng::seed_from_u64(seed);
    buffer(
        (0..len)
            .map(|_| {
                let z: f64 = StandardNormal.sample(&mut rng);
                rms * z
            })
            .collect::<Vec<f64>>(),
        rate,
    )
}
