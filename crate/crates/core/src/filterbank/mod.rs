//! Elliptic band-pass filters, one per pitch band.
//!
//! Each filter is an 8th-order elliptic band-pass (prototype order 4, 0.5 dB
//! passband ripple, 40 dB stopband) realised as four biquads. The
//! coefficients were designed offline (`tools/design_filterbank.py`) and are
//! embedded in [`coefficients`]; `data/filterbank_coefficients.txt` holds a
//! readable copy.

mod coefficients;

use std::f64::consts::PI;

use rustfft::num_complex::Complex;

use crate::bands::BandLabel;
use crate::error::{Error, Result};

pub use coefficients::{ATTENUATION_DB, DESIGN_RATE, RIPPLE_DB};

/// One second-order section with `a0 = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Biquad {
    pub b: [f64; 3],
    pub a: [f64; 2],
}

impl Biquad {
    /// Pole magnitudes, largest first.
    pub fn pole_radii(&self) -> [f64; 2] {
        let [a1, a2] = self.a;
        let disc = a1 * a1 - 4.0 * a2;
        let (r1, r2) = if disc < 0.0 {
            // complex pair: |p|^2 = a2
            (a2.sqrt(), a2.sqrt())
        } else {
            let s = disc.sqrt();
            (((-a1 + s) / 2.0).abs(), ((-a1 - s) / 2.0).abs())
        };
        [r1.max(r2), r1.min(r2)]
    }

    fn response(&self, z_inv: Complex<f64>) -> Complex<f64> {
        let z2 = z_inv * z_inv;
        let num = self.b[0] + self.b[1] * z_inv + self.b[2] * z2;
        let den = 1.0 + self.a[0] * z_inv + self.a[1] * z2;
        num / den
    }
}

/// Cascade of biquads with an overall gain.
#[derive(Debug, Clone, PartialEq)]
pub struct BiquadCascade {
    sections: Vec<Biquad>,
    gain: f64,
    band: BandLabel,
    sample_rate: u32,
}

impl BiquadCascade {
    pub fn sections(&self) -> &[Biquad] {
        &self.sections
    }

    pub fn gain(&self) -> f64 {
        self.gain
    }

    pub fn band(&self) -> BandLabel {
        self.band
    }

    pub fn sample_rate(&self) -> u32 {
        self.sample_rate
    }

    /// Filter order (twice the section count).
    pub fn order(&self) -> usize {
        2 * self.sections.len()
    }

    pub fn max_pole_radius(&self) -> f64 {
        self.sections
            .iter()
            .map(|s| s.pole_radii()[0])
            .fold(0.0, f64::max)
    }

    pub fn is_stable(&self) -> bool {
        self.max_pole_radius() < 1.0
    }

    /// Complex frequency response at `freq` Hz.
    pub fn response(&self, freq: f64) -> Complex<f64> {
        let w = 2.0 * PI * freq / self.sample_rate as f64;
        let z_inv = Complex::from_polar(1.0, -w);
        self.sections
            .iter()
            .fold(Complex::new(self.gain, 0.0), |acc, s| acc * s.response(z_inv))
    }

    pub fn magnitude_db(&self, freq: f64) -> f64 {
        20.0 * self.response(freq).norm().log10()
    }
}

/// The embedded elliptic band-pass for `label`.
pub fn design_band_filter(label: BandLabel, sample_rate: u32) -> Result<BiquadCascade> {
    if sample_rate != DESIGN_RATE {
        return Err(Error::UnsupportedRate {
            expected: DESIGN_RATE,
            actual: sample_rate,
        });
    }
    let (gain, rows) = coefficients::TABLE
        .get(label.index())
        .ok_or(Error::NoBand(label))?;
    let sections = rows
        .iter()
        .map(|r| Biquad {
            b: [r[0] / r[3], r[1] / r[3], r[2] / r[3]],
            a: [r[4] / r[3], r[5] / r[3]],
        })
        .collect();
    Ok(BiquadCascade {
        sections,
        gain: *gain,
        band: label,
        sample_rate,
    })
}

/// Causal single-pass filtering, transposed direct form II, zero initial state.
pub fn apply_filter(filt: &BiquadCascade, samples: &[f64]) -> Vec<f64> {
    let mut out: Vec<f64> = samples.iter().map(|x| x * filt.gain).collect();
    for s in &filt.sections {
        let (mut z1, mut z2) = (0.0, 0.0);
        for v in out.iter_mut() {
            let x = *v;
            let y = s.b[0] * x + z1;
            z1 = s.b[1] * x - s.a[0] * y + z2;
            z2 = s.b[2] * x - s.a[1] * y;
            *v = y;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth;

    fn steady_amplitude(y: &[f64], skip: usize) -> f64 {
        y[skip..].iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    #[test]
    fn unvoiced_has_no_filter() {
        assert!(matches!(design_band_filter(BandLabel::V, 16000), Err(Error::NoBand(_))));
        assert!(design_band_filter(BandLabel::S1, 44100).is_err());
    }

    #[test]
    fn every_band_is_stable_eighth_order() {
        for label in &BandLabel::ALL[..8] {
            let f = design_band_filter(*label, 16000).unwrap();
            assert_eq!(f.order(), 8);
            assert!(f.is_stable(), "{label}: {}", f.max_pole_radius());
        }
    }

    #[test]
    fn impulse_response_decays_within_two_seconds() {
        for label in &BandLabel::ALL[..8] {
            let f = design_band_filter(*label, 16000).unwrap();
            let mut x = vec![0.0; 32000];
            x[0] = 1.0;
            let h = apply_filter(&f, &x);
            let tail = h[31000..].iter().fold(0.0f64, |m, v| m.max(v.abs()));
            assert!(tail < 1e-6, "{label}: tail {tail}");
        }
    }

    #[test]
    fn zero_in_zero_out() {
        let f = design_band_filter(BandLabel::S4, 16000).unwrap();
        assert!(apply_filter(&f, &[0.0; 1000]).iter().all(|&v| v == 0.0));
        assert!(apply_filter(&f, &[]).is_empty());
    }

    #[test]
    fn in_band_tone_passes_at_unity() {
        let f = design_band_filter(BandLabel::S5, 16000).unwrap();
        let x = synth::tone(250.0, 0.0, 16000, 16000, 1.0);
        let y = apply_filter(&f, x.samples());
        assert_eq!(y.len(), x.len());
        let amp_db = 20.0 * steady_amplitude(&y, 8000).log10();
        let designed = f.magnitude_db(250.0);
        assert!(amp_db.abs() <= 0.5, "{amp_db} dB");
        assert!((amp_db - designed).abs() < 0.05, "{amp_db} vs {designed}");
    }

    #[test]
    fn superposition() {
        let f = design_band_filter(BandLabel::S2, 16000).unwrap();
        let a = synth::white_noise(3000, 1.0, 16000, 1);
        let b = synth::white_noise(3000, 1.0, 16000, 2);
        let mix: Vec<f64> = a.samples().iter().zip(b.samples()).map(|(x, y)| 2.0 * x - 0.5 * y).collect();
        let ya = apply_filter(&f, a.samples());
        let yb = apply_filter(&f, b.samples());
        let ym = apply_filter(&f, &mix);
        for i in 0..3000 {
            assert!((ym[i] - (2.0 * ya[i] - 0.5 * yb[i])).abs() < 1e-9);
        }
        // time invariance: delaying the input delays the output
        let mut delayed = vec![0.0; 37];
        delayed.extend_from_slice(a.samples());
        let yd = apply_filter(&f, &delayed);
        for i in 0..3000 {
            assert!((yd[i + 37] - ya[i]).abs() < 1e-9);
        }
    }
}
