//! The nominal pitch classes: eight half-open bands over 50–800 Hz plus
//! an unvoiced state. Class indices follow `[s1..s8, v] = 0..=8`.

use std::fmt;

use crate::dsp::{FrameGeometry, LagRange};
use crate::error::{Error, Result};
use crate::track::PitchTrack;

pub const NUM_CLASSES: usize = 9;
pub const NUM_BANDS: usize = 8;

/// `[lo, hi)` edges in Hz for s1..s8.
pub const BAND_EDGES: [(f64, f64); NUM_BANDS] = [
    (50.0, 75.0),
    (75.0, 100.0),
    (100.0, 150.0),
    (150.0, 200.0),
    (200.0, 300.0),
    (300.0, 400.0),
    (400.0, 600.0),
    (600.0, 800.0),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BandLabel {
    S1,
    S2,
    S3,
    S4,
    S5,
    S6,
    S7,
    S8,
    /// Unvoiced or silent.
    V,
}

impl BandLabel {
    pub const ALL: [BandLabel; NUM_CLASSES] = [
        BandLabel::S1,
        BandLabel::S2,
        BandLabel::S3,
        BandLabel::S4,
        BandLabel::S5,
        BandLabel::S6,
        BandLabel::S7,
        BandLabel::S8,
        BandLabel::V,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i).copied()
    }

    pub fn is_voiced(self) -> bool {
        self != BandLabel::V
    }

    /// The band whose half-open interval contains `f0`.
    pub fn from_frequency(f0: f64) -> Result<Self> {
        BAND_EDGES
            .iter()
            .position(|&(lo, hi)| lo <= f0 && f0 < hi)
            .map(|i| Self::ALL[i])
            .ok_or(Error::FrequencyOutOfRange(f0))
    }

    /// `(f_lo, f_hi)` in Hz; the unvoiced state has none.
    pub fn edges(self) -> Result<(f64, f64)> {
        BAND_EDGES.get(self.index()).copied().ok_or(Error::NoBand(self))
    }

    /// Lag interval searched when decoding this band at `sample_rate`.
    pub fn lag_range(self, sample_rate: u32) -> Result<LagRange> {
        let (lo, hi) = self.edges()?;
        Ok(LagRange::for_band(lo, hi, sample_rate))
    }

    pub fn one_hot(self) -> [f64; NUM_CLASSES] {
        let mut v = [0.0; NUM_CLASSES];
        v[self.index()] = 1.0;
        v
    }

    pub fn name(self) -> &'static str {
        ["s1", "s2", "s3", "s4", "s5", "s6", "s7", "s8", "v"][self.index()]
    }
}

impl fmt::Display for BandLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn band_of_frequency(f0: f64) -> Result<BandLabel> {
    BandLabel::from_frequency(f0)
}

pub fn band_edges(label: BandLabel) -> Result<(f64, f64)> {
    label.edges()
}

/// One label per entry: the band of each voiced f0, `V` for unvoiced.
pub fn oracle_labels(truth: &PitchTrack) -> Result<Vec<BandLabel>> {
    truth
        .entries()
        .iter()
        .map(|e| {
            if e.voiced {
                BandLabel::from_frequency(e.f0)
            } else {
                Ok(BandLabel::V)
            }
        })
        .collect()
}

/// Oracle labels resampled onto analysis frames: each frame takes the label
/// of the reference entry nearest its centre time.
pub fn oracle_frame_labels(truth: &PitchTrack, geometry: FrameGeometry, frame_count: usize) -> Result<Vec<BandLabel>> {
    let per_entry = oracle_labels(truth)?;
    if per_entry.is_empty() {
        return Err(Error::Empty("reference track"));
    }
    Ok((0..frame_count)
        .map(|t| {
            let i = truth
                .nearest_index(geometry.frame_center_secs(t))
                .expect("track is not empty");
            per_entry[i]
        })
        .collect())
}
