use std::cell::RefCell;

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

/// Frames shorter than this use the O(N^2) sum directly.
const FFT_THRESHOLD: usize = 128;

/// Mean-square energy below which a frame counts as silent.
pub const SILENCE_ENERGY: f64 = 1e-10;

/// Autocorrelation coefficients for lags `0..N`.
#[derive(Debug, Clone, PartialEq)]
pub struct Acf {
    values: Vec<f64>,
    silent: bool,
}

impl Acf {
    pub fn new(values: Vec<f64>) -> Self {
        Acf { values, silent: false }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Set by [`normalize_acf`] when the frame had no energy.
    pub fn is_silent(&self) -> bool {
        self.silent
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

/// `r[tau] = (1/N) sum_j x[j] x[j+tau]`, with `x` zero outside the frame.
pub fn autocorr(frame: &[f64]) -> Acf {
    if frame.len() <= FFT_THRESHOLD {
        autocorr_direct(frame)
    } else {
        Acf::new(autocorr_fft(frame))
    }
}

/// Direct evaluation of [`autocorr`]; used for short frames.
pub fn autocorr_direct(frame: &[f64]) -> Acf {
    let n = frame.len();
    let values = (0..n)
        .map(|tau| {
            frame[..n - tau]
                .iter()
                .zip(&frame[tau..])
                .map(|(a, b)| a * b)
                .sum::<f64>()
                / n as f64
        })
        .collect();
    Acf::new(values)
}

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn autocorr_fft(frame: &[f64]) -> Vec<f64> {
    let n = frame.len();
    // linear (not circular) correlation needs at least 2N - 1 points
    let size = (2 * n).next_power_of_two();
    let fft = PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        (p.plan_fft_forward(size), p.plan_fft_inverse(size))
    });
    let mut buf: Vec<Complex<f64>> = frame
        .iter()
        .map(|&x| Complex::new(x, 0.0))
        .chain(std::iter::repeat(Complex::new(0.0, 0.0)))
        .take(size)
        .collect();
    fft.0.process(&mut buf);
    for c in buf.iter_mut() {
        *c = Complex::new(c.norm_sqr(), 0.0);
    }
    fft.1.process(&mut buf);
    let scale = 1.0 / (size as f64 * n as f64);
    buf[..n].iter().map(|c| c.re * scale).collect()
}

/// Divides by the lag-0 value so the result starts at 1. Frames whose
/// lag-0 energy is at most [`SILENCE_ENERGY`] come back all zero and flagged silent.
pub fn normalize_acf(acf: &Acf) -> Acf {
    match acf.values.first() {
        Some(&e) if e > SILENCE_ENERGY => Acf::new(acf.values.iter().map(|v| v / e).collect()),
        _ => Acf {
            values: vec![0.0; acf.values.len()],
            silent: true,
        },
    }
}

/// Autocorrelation of an autocorrelation sequence, same normalization and
/// zero extension as [`autocorr`].
pub fn double_autocorr(acf: &Acf) -> Acf {
    autocorr(&acf.values)
}

/// Lagged-product sum divided by the geometric mean energy of the two
/// overlapping segments: `sum x[j] x[j+tau] / sqrt(E[0..N-tau] E[tau..N])`.
///
/// Unlike [`autocorr`] this has no triangular taper, so its peaks sit at
/// the true period instead of being pulled toward shorter lags. Trailing
/// zeros (a zero-padded tail frame) are left out of the segment energies.
pub fn energy_normalized_acf(frame: &[f64]) -> Acf {
    let n = frame.iter().rposition(|&x| x != 0.0).map_or(0, |i| i + 1);
    let scale = frame.len() as f64;
    let raw = autocorr(frame);
    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(0.0);
    let mut acc = 0.0;
    for x in &frame[..n] {
        acc += x * x;
        prefix.push(acc);
    }
    let values = raw
        .values
        .iter()
        .enumerate()
        .map(|(tau, r)| {
            if tau >= n {
                return 0.0;
            }
            let head = prefix[n - tau];
            let tail = prefix[n] - prefix[tau];
            let denom = (head * tail).sqrt();
            if denom > 0.0 {
                r * scale / denom
            } else {
                0.0
            }
        })
        .collect();
    Acf::new(values)
}
