//! Pitch tracks and their CSV form.
//!
//! ```text
//! time_s,f0_hz,voiced
//! 0.025000,0.0000,0
//! 0.035000,121.3750,1
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

pub const CSV_HEADER: &str = "time_s,f0_hz,voiced";

/// Lowest and (exclusive) highest f0 accepted in reference tracks.
pub const F0_MIN: f64 = 50.0;
pub const F0_MAX: f64 = 800.0;

const UNIFORM_TOLERANCE: f64 = 1e-9;
/// Time quantum of the CSV format (6 decimals) plus slack.
const CSV_TIME_TOLERANCE: f64 = 1.5e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PitchEntry {
    pub time: f64,
    /// Hz; exactly 0 when unvoiced.
    pub f0: f64,
    pub voiced: bool,
}

impl PitchEntry {
    pub fn voiced(time: f64, f0: f64) -> Self {
        PitchEntry { time, f0, voiced: true }
    }

    pub fn unvoiced(time: f64) -> Self {
        PitchEntry {
            time,
            f0: 0.0,
            voiced: false,
        }
    }
}

/// Uniformly spaced per-frame f0 values.
#[derive(Debug, Clone, PartialEq)]
pub struct PitchTrack {
    hop_seconds: f64,
    entries: Vec<PitchEntry>,
}

impl PitchTrack {
    /// Validates spacing and the voicing/f0 encoding.
    ///
    /// With fewer than two entries the spacing is unconstrained and
    /// `hop_seconds` is taken as given.
    pub fn new(hop_seconds: f64, entries: Vec<PitchEntry>) -> Result<Self> {
        if !(hop_seconds.is_finite() && hop_seconds >= 0.0) {
            return Err(Error::InvalidTrack(format!("bad hop {hop_seconds}")));
        }
        if entries.len() >= 2 && hop_seconds <= 0.0 {
            return Err(Error::InvalidTrack("hop must be positive".into()));
        }
        for (i, e) in entries.iter().enumerate() {
            if !e.time.is_finite() {
                return Err(Error::InvalidTrack(format!("entry {i}: non-finite time")));
            }
            check_voicing(e).map_err(|m| Error::InvalidTrack(format!("entry {i}: {m}")))?;
            if i > 0 {
                let expected = entries[0].time + i as f64 * hop_seconds;
                if (e.time - expected).abs() > UNIFORM_TOLERANCE {
                    return Err(Error::InvalidTrack(format!(
                        "entry {i}: time {} breaks uniform spacing (expected {expected})",
                        e.time
                    )));
                }
            }
        }
        Ok(PitchTrack {
            hop_seconds,
            entries,
        })
    }

    /// Builds a track at `start + i * hop` from per-frame f0 values, 0 meaning unvoiced.
    pub fn from_f0(start: f64, hop_seconds: f64, f0: &[f64]) -> Result<Self> {
        let entries = f0
            .iter()
            .enumerate()
            .map(|(i, &f)| {
                let time = start + i as f64 * hop_seconds;
                if f > 0.0 {
                    PitchEntry::voiced(time, f)
                } else {
                    PitchEntry::unvoiced(time)
                }
            })
            .collect();
        PitchTrack::new(hop_seconds, entries)
    }

    pub fn hop_seconds(&self) -> f64 {
        self.hop_seconds
    }

    pub fn entries(&self) -> &[PitchEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Index of the entry whose time is nearest to `time`; ties go to the
    /// earlier entry and times outside the track map to the edge entries.
    pub fn nearest_index(&self, time: f64) -> Option<usize> {
        let last = self.entries.len().checked_sub(1)?;
        if last == 0 || self.hop_seconds <= 0.0 {
            return Some(0);
        }
        let x = (time - self.entries[0].time) / self.hop_seconds;
        // ceil(x - 0.5) sends exact midpoints to the earlier frame
        let idx = (x - 0.5 - 1e-9).ceil();
        Some(idx.clamp(0.0, last as f64) as usize)
    }

    pub fn to_csv_string(&self) -> String {
        let mut out = String::with_capacity(32 * (self.entries.len() + 1));
        out.push_str(CSV_HEADER);
        out.push('\n');
        for e in &self.entries {
            let _ = writeln!(out, "{:.6},{:.4},{}", e.time, e.f0, u8::from(e.voiced));
        }
        out
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_csv_string()).map_err(|e| Error::io(path, e))
    }

    /// Parses the CSV form. Line numbers in errors are 1-based and count the header.
    pub fn parse_csv(text: &str) -> Result<Self> {
        parse(text, false)
    }

    pub fn read_csv(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        PitchTrack::parse_csv(&text)
    }
}

/// Reads a pitch track written by [`PitchTrack::write_csv`].
pub fn read_pitch_track(path: impl AsRef<Path>) -> Result<PitchTrack> {
    PitchTrack::read_csv(path)
}

/// Writes `track` as CSV.
pub fn write_pitch_track(track: &PitchTrack, path: impl AsRef<Path>) -> Result<()> {
    track.write_csv(path)
}

/// Reads a reference track; voiced rows must lie in `[50, 800)` Hz.
pub fn read_ground_truth(path: impl AsRef<Path>) -> Result<PitchTrack> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_ground_truth(&text)
}

pub fn parse_ground_truth(text: &str) -> Result<PitchTrack> {
    parse(text, true)
}

fn check_voicing(e: &PitchEntry) -> std::result::Result<(), String> {
    if e.voiced {
        if !(e.f0.is_finite() && e.f0 > 0.0) {
            return Err(format!("voiced entry needs a positive f0, got {}", e.f0));
        }
    } else if e.f0 != 0.0 {
        return Err(format!("unvoiced entry must have f0 = 0, got {}", e.f0));
    }
    Ok(())
}

fn parse(text: &str, enforce_range: bool) -> Result<PitchTrack> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == CSV_HEADER => {}
        Some((_, h)) => {
            return Err(Error::Parse {
                line: 1,
                message: format!("expected header {CSV_HEADER:?}, found {h:?}"),
            })
        }
        None => {
            return Err(Error::Parse {
                line: 1,
                message: "missing header".into(),
            })
        }
    }
    let mut entries = Vec::new();
    for (idx, raw) in lines {
        let line = idx + 1;
        let row = raw.trim();
        if row.is_empty() {
            continue;
        }
        let cols: Vec<&str> = row.split(',').map(str::trim).collect();
        if cols.len() != 3 {
            return Err(Error::Parse {
                line,
                message: format!("expected 3 columns, found {}", cols.len()),
            });
        }
        let number = |s: &str, what: &str| -> Result<f64> {
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::Parse {
                    line,
                    message: format!("{what} {s:?} is not a number"),
                })
        };
        let time = number(cols[0], "time")?;
        let f0 = number(cols[1], "f0")?;
        let voiced = match cols[2] {
            "0" => false,
            "1" => true,
            other => {
                return Err(Error::Parse {
                    line,
                    message: format!("voiced flag must be 0 or 1, found {other:?}"),
                })
            }
        };
        let entry = PitchEntry { time, f0, voiced };
        check_voicing(&entry).map_err(|message| Error::Parse { line, message })?;
        if enforce_range && voiced && !(F0_MIN..F0_MAX).contains(&f0) {
            return Err(Error::F0OutOfRange { line, f0 });
        }
        entries.push((line, entry));
    }
    regularize(entries)
}

/// Snaps parsed times onto an exact grid after checking they are uniform
/// within the precision of the text format.
fn regularize(rows: Vec<(usize, PitchEntry)>) -> Result<PitchTrack> {
    if rows.len() < 2 {
        return PitchTrack::new(0.0, rows.into_iter().map(|(_, e)| e).collect());
    }
    let t0 = rows[0].1.time;
    let hop = (rows[rows.len() - 1].1.time - t0) / (rows.len() - 1) as f64;
    if hop <= 0.0 {
        return Err(Error::Parse {
            line: rows[1].0,
            message: "times must be strictly increasing".into(),
        });
    }
    let mut entries = Vec::with_capacity(rows.len());
    for (i, (line, mut e)) in rows.into_iter().enumerate() {
        let grid = t0 + i as f64 * hop;
        if (e.time - grid).abs() > CSV_TIME_TOLERANCE {
            return Err(Error::Parse {
                line,
                message: format!("time {} is not on a uniform grid (expected {grid:.6})", e.time),
            });
        }
        e.time = grid;
        entries.push(e);
    }
    PitchTrack::new(hop, entries)
}
