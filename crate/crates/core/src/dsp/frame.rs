use crate::audio::AudioBuffer;
use crate::error::{Error, Result};
use crate::PIPELINE_RATE;

/// Frame length and hop for 50 ms frames with 80 % overlap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrameGeometry {
    pub frame_len: usize,
    pub hop: usize,
    pub sample_rate: u32,
}

impl FrameGeometry {
    pub fn for_rate(sample_rate: u32) -> Self {
        FrameGeometry {
            frame_len: (0.050 * sample_rate as f64).round() as usize,
            hop: (0.010 * sample_rate as f64).round() as usize,
            sample_rate,
        }
    }

    /// `ceil(len / hop)`: every sample starts inside some frame.
    pub fn frame_count(&self, len: usize) -> usize {
        len.div_ceil(self.hop)
    }

    pub fn frame_start(&self, t: usize) -> usize {
        t * self.hop
    }

    /// Centre of frame `t` in seconds; pitch tracks are stamped with this.
    pub fn frame_center_secs(&self, t: usize) -> f64 {
        (t * self.hop) as f64 / self.sample_rate as f64 + self.frame_len as f64 / (2.0 * self.sample_rate as f64)
    }

    pub fn hop_secs(&self) -> f64 {
        self.hop as f64 / self.sample_rate as f64
    }

    /// Copies frame `t` out of `samples`, zero-padding past the end.
    pub fn extract(&self, samples: &[f64], t: usize) -> Vec<f64> {
        let start = self.frame_start(t).min(samples.len());
        let end = (start + self.frame_len).min(samples.len());
        let mut frame = vec![0.0; self.frame_len];
        frame[..end - start].copy_from_slice(&samples[start..end]);
        frame
    }
}

/// Overlapping analysis frames of a signal, no window applied.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameSeries {
    frames: Vec<Vec<f64>>,
    geometry: FrameGeometry,
}

impl FrameSeries {
    pub fn frames(&self) -> &[Vec<f64>] {
        &self.frames
    }

    pub fn frame(&self, t: usize) -> &[f64] {
        &self.frames[t]
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn geometry(&self) -> FrameGeometry {
        self.geometry
    }

    pub fn frame_len(&self) -> usize {
        self.geometry.frame_len
    }

    pub fn hop(&self) -> usize {
        self.geometry.hop
    }
}

/// Splits a 16 kHz buffer into 800-sample frames every 160 samples.
pub fn frame_signal(buf: &AudioBuffer) -> Result<FrameSeries> {
    if buf.sample_rate() != PIPELINE_RATE {
        return Err(Error::UnsupportedRate {
            expected: PIPELINE_RATE,
            actual: buf.sample_rate(),
        });
    }
    if buf.is_empty() {
        return Err(Error::Empty("audio buffer"));
    }
    let geometry = FrameGeometry::for_rate(buf.sample_rate());
    let frames = (0..geometry.frame_count(buf.len()))
        .map(|t| geometry.extract(buf.samples(), t))
        .collect();
    Ok(FrameSeries { frames, geometry })
}
