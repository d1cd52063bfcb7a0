//! Band-guided f0 decoding: filter each label run with its band's
//! elliptic band-pass, then pick the period with the double ACF.
//!
//! Each run is filtered twice, causally and over the time-reversed span.
//! The elliptic filters ring for tens of milliseconds near their band
//! edges, so frames in the first half of a run read the reversed output
//! (settled at the run's start) and the rest read the causal output.

use std::fmt::Write as _;
use std::path::Path;

use crate::audio::AudioBuffer;
use crate::bands::BandLabel;
use crate::dsp::{estimate_period, FrameGeometry};
use crate::error::{Error, Result};
use crate::filterbank::{apply_filter, design_band_filter, BiquadCascade};
use crate::track::{PitchEntry, PitchTrack};
use crate::PIPELINE_RATE;

/// Filter warm-up added on each side of a run, in seconds.
pub const RUN_PADDING_SECS: f64 = 0.025;

/// Widening of the band edges that decoded f0 is clamped to.
const CLAMP_LO: f64 = 0.8;
const CLAMP_HI: f64 = 1.25;

/// Maximal stretch of frames sharing one label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabelRun {
    pub label: BandLabel,
    /// Inclusive.
    pub start_frame: usize,
    /// Inclusive.
    pub end_frame: usize,
    /// Padded sample span `[start_sample, end_sample)`.
    pub start_sample: usize,
    pub end_sample: usize,
}

impl LabelRun {
    pub fn frames(&self) -> std::ops::RangeInclusive<usize> {
        self.start_frame..=self.end_frame
    }
}

/// Splits `labels` into runs. Each run's sample span covers the analysis
/// windows of its frames plus [`RUN_PADDING_SECS`] either side, clipped to
/// `signal_len`.
pub fn segment_runs(labels: &[BandLabel], geometry: FrameGeometry, signal_len: usize) -> Vec<LabelRun> {
    let pad = (RUN_PADDING_SECS * geometry.sample_rate as f64).round() as usize;
    let mut runs = Vec::new();
    let mut start = 0;
    for i in 1..=labels.len() {
        if i == labels.len() || labels[i] != labels[start] {
            let first = analysis_start(geometry, start, signal_len);
            let last = geometry.frame_start(i - 1) + geometry.frame_len;
            runs.push(LabelRun {
                label: labels[start],
                start_frame: start,
                end_frame: i - 1,
                start_sample: first.saturating_sub(pad).min(signal_len),
                end_sample: (last + pad).min(signal_len),
            });
            start = i;
        }
    }
    runs
}

/// Per-frame decoder internals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameDiagnostic {
    pub frame: usize,
    pub label: BandLabel,
    /// Double-ACF candidate; `None` for unvoiced or silent frames.
    pub t0: Option<usize>,
    pub lag: Option<f64>,
    /// f0 before clamping.
    pub raw_f0: Option<f64>,
    pub clamped: bool,
    /// No ACF peak near `t0`; the integer lag was used.
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Decoded {
    pub track: PitchTrack,
    pub diagnostics: Vec<FrameDiagnostic>,
}

impl Decoded {
    /// Fraction of voiced-label frames whose estimate had to be clamped.
    pub fn clamp_rate(&self) -> f64 {
        let voiced = self.diagnostics.iter().filter(|d| d.t0.is_some()).count();
        if voiced == 0 {
            return 0.0;
        }
        self.diagnostics.iter().filter(|d| d.clamped).count() as f64 / voiced as f64
    }

    pub fn diagnostics_csv(&self) -> String {
        let mut out = String::from("frame,label,t0,lag,clamped\n");
        for d in &self.diagnostics {
            let t0 = d.t0.map(|t| t.to_string()).unwrap_or_default();
            let lag = d.lag.map(|l| format!("{l:.4}")).unwrap_or_default();
            let _ = writeln!(out, "{},{},{},{},{}", d.frame, d.label, t0, lag, u8::from(d.clamped));
        }
        out
    }

    pub fn write_diagnostics(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.diagnostics_csv()).map_err(|e| Error::io(path, e))
    }
}

/// Where frame `t` is analysed: its own position, or the last full window
/// of the signal when the frame runs past the end.
pub fn analysis_start(geometry: FrameGeometry, t: usize, signal_len: usize) -> usize {
    geometry.frame_start(t).min(signal_len.saturating_sub(geometry.frame_len))
}

/// Anti-causal pass: the cascade run over the time-reversed span.
fn filter_reversed(filter: &BiquadCascade, span: &[f64]) -> Vec<f64> {
    let reversed: Vec<f64> = span.iter().rev().copied().collect();
    let mut out = apply_filter(filter, &reversed);
    out.reverse();
    out
}

pub fn decode_pitch(buf: &AudioBuffer, labels: &[BandLabel]) -> Result<PitchTrack> {
    decode_pitch_with_diagnostics(buf, labels).map(|d| d.track)
}

/// Decodes one f0 per frame of `buf` given one band label per frame.
pub fn decode_pitch_with_diagnostics(buf: &AudioBuffer, labels: &[BandLabel]) -> Result<Decoded> {
    if buf.sample_rate() != PIPELINE_RATE {
        return Err(Error::UnsupportedRate {
            expected: PIPELINE_RATE,
            actual: buf.sample_rate(),
        });
    }
    let geometry = FrameGeometry::for_rate(buf.sample_rate());
    let frames = geometry.frame_count(buf.len());
    if labels.len() != frames {
        return Err(Error::LabelCount {
            labels: labels.len(),
            frames,
        });
    }
    let fs = buf.sample_rate() as f64;
    let mut f0 = vec![0.0; frames];
    let mut diagnostics: Vec<FrameDiagnostic> = (0..frames)
        .map(|t| FrameDiagnostic {
            frame: t,
            label: labels[t],
            t0: None,
            lag: None,
            raw_f0: None,
            clamped: false,
            degenerate: false,
        })
        .collect();

    for run in segment_runs(labels, geometry, buf.len()) {
        if !run.label.is_voiced() {
            continue;
        }
        let filter = design_band_filter(run.label, buf.sample_rate())?;
        let range = run.label.lag_range(buf.sample_rate())?;
        let (f_lo, f_hi) = run.label.edges()?;
        let span = &buf.samples()[run.start_sample..run.end_sample];
        let forward = apply_filter(&filter, span);
        let backward = filter_reversed(&filter, span);
        let mid = (run.start_sample + run.end_sample) / 2;
        for t in run.frames() {
            let start = analysis_start(geometry, t, buf.len());
            // read whichever output has its start-up transient at the far end of the run
            let filtered = if start + geometry.frame_len / 2 < mid { &backward } else { &forward };
            let frame = geometry.extract(&filtered[start - run.start_sample..], 0);
            let Some(est) = estimate_period(&frame, range) else {
                continue;
            };
            let raw = fs / est.lag;
            let clamped = raw.clamp(CLAMP_LO * f_lo, CLAMP_HI * f_hi);
            f0[t] = clamped;
            diagnostics[t] = FrameDiagnostic {
                t0: Some(est.t0),
                lag: Some(est.lag),
                raw_f0: Some(raw),
                clamped: clamped != raw,
                degenerate: est.degenerate,
                ..diagnostics[t]
            };
        }
    }

    let entries = f0
        .iter()
        .enumerate()
        .map(|(t, &f)| {
            let time = geometry.frame_center_secs(t);
            if f > 0.0 {
                PitchEntry::voiced(time, f)
            } else {
                PitchEntry::unvoiced(time)
            }
        })
        .collect();
    Ok(Decoded {
        track: PitchTrack::new(geometry.hop_secs(), entries)?,
        diagnostics,
    })
}
