//! Speech (VDE, GPE, FPE, FFE) and singing (VD, VFA, RPA, RCA, OA) pitch metrics.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::track::{PitchEntry, PitchTrack};

/// Relative deviation above which a voiced estimate counts as a gross error.
pub const GROSS_ERROR_THRESHOLD: f64 = 0.20;
/// Raw pitch tolerance in cents.
pub const RAW_PITCH_CENTS: f64 = 50.0;

pub const REPORT_CSV_HEADER: &str =
    "file,vde,gpe,fpe,ffe,vd,vfa,rpa,rca,oa,total,voiced_ref,unvoiced_ref,both_voiced";

/// One reference frame and the estimate frame it was paired with.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FramePair {
    pub est: PitchEntry,
    pub reference: PitchEntry,
}

/// Pairs every reference frame with the estimate frame whose time is
/// nearest; ties go to the earlier frame and frames outside the estimate's
/// span use its edge frames.
pub fn align(est: &PitchTrack, reference: &PitchTrack) -> Result<Vec<FramePair>> {
    if est.is_empty() {
        return Err(Error::Empty("estimated track"));
    }
    if reference.is_empty() {
        return Err(Error::Empty("reference track"));
    }
    Ok(reference
        .entries()
        .iter()
        .map(|r| FramePair {
            est: est.entries()[est.nearest_index(r.time).expect("non-empty")],
            reference: *r,
        })
        .collect())
}

/// Interval from `f_ref` to `f_est` in cents.
pub fn cents(f_est: f64, f_ref: f64) -> f64 {
    1200.0 * (f_est / f_ref).log2()
}

/// `c` shifted by whole octaves into `(-600, 600]`.
pub fn fold_octave(c: f64) -> f64 {
    c - 1200.0 * ((c - 600.0) / 1200.0).ceil()
}

/// Frame counts behind an [`EvalReport`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EvalCounts {
    pub total: usize,
    pub voiced_ref: usize,
    pub unvoiced_ref: usize,
    pub both_voiced: usize,
    /// Voiced in one track, unvoiced in the other.
    pub voicing_errors: usize,
    /// Unvoiced reference frames the estimate calls voiced.
    pub false_alarms: usize,
    pub gross_errors: usize,
    pub raw_pitch_hits: usize,
    pub raw_chroma_hits: usize,
    pub correct: usize,
}

impl EvalCounts {
    /// GPE is 0/0.
    pub fn no_both_voiced(&self) -> bool {
        self.both_voiced == 0
    }

    /// FPE is 0/0: every both-voiced frame is a gross error, or there are none.
    pub fn no_fine_frames(&self) -> bool {
        self.both_voiced == self.gross_errors
    }

    /// VD, RPA and RCA are 0/0.
    pub fn no_voiced_ref(&self) -> bool {
        self.voiced_ref == 0
    }

    /// VFA is 0/0.
    pub fn no_unvoiced_ref(&self) -> bool {
        self.unvoiced_ref == 0
    }
}

/// Metric values for one file. Ratios are in `[0, 1]` except `fpe`, which
/// is a percentage. A metric whose denominator is empty is 0 and flagged in
/// `counts`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalReport {
    pub vde: f64,
    pub gpe: f64,
    pub fpe: f64,
    pub ffe: f64,
    pub vd: f64,
    pub vfa: f64,
    pub rpa: f64,
    pub rca: f64,
    pub oa: f64,
    pub counts: EvalCounts,
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Aligns `est` to `reference` and scores every reference frame.
pub fn evaluate(est: &PitchTrack, reference: &PitchTrack) -> Result<EvalReport> {
    Ok(evaluate_pairs(&align(est, reference)?))
}

pub fn evaluate_pairs(pairs: &[FramePair]) -> EvalReport {
    let mut c = EvalCounts {
        total: pairs.len(),
        ..EvalCounts::default()
    };
    let mut fine_sum = 0.0;
    for p in pairs {
        let (e, r) = (p.est, p.reference);
        if r.voiced {
            c.voiced_ref += 1;
        } else {
            c.unvoiced_ref += 1;
        }
        if e.voiced != r.voiced {
            c.voicing_errors += 1;
            if e.voiced {
                c.false_alarms += 1;
            }
            continue;
        }
        if !r.voiced {
            c.correct += 1;
            continue;
        }
        c.both_voiced += 1;
        let rel = (e.f0 / r.f0 - 1.0).abs();
        if rel > GROSS_ERROR_THRESHOLD {
            c.gross_errors += 1;
        } else {
            fine_sum += rel;
        }
        let dc = cents(e.f0, r.f0);
        if dc.abs() <= RAW_PITCH_CENTS {
            c.raw_pitch_hits += 1;
            c.correct += 1;
        }
        if fold_octave(dc).abs() <= RAW_PITCH_CENTS {
            c.raw_chroma_hits += 1;
        }
    }
    let fine = c.both_voiced - c.gross_errors;
    EvalReport {
        vde: ratio(c.voicing_errors, c.total),
        gpe: ratio(c.gross_errors, c.both_voiced),
        fpe: if fine == 0 { 0.0 } else { 100.0 * fine_sum / fine as f64 },
        ffe: ratio(c.voicing_errors + c.gross_errors, c.total),
        vd: ratio(c.both_voiced, c.voiced_ref),
        vfa: ratio(c.false_alarms, c.unvoiced_ref),
        rpa: ratio(c.raw_pitch_hits, c.voiced_ref),
        rca: ratio(c.raw_chroma_hits, c.voiced_ref),
        oa: ratio(c.correct, c.total),
        counts: c,
    }
}

/// Metric names in report order.
pub const METRIC_NAMES: [&str; 9] = ["vde", "gpe", "fpe", "ffe", "vd", "vfa", "rpa", "rca", "oa"];

impl EvalReport {
    pub fn values(&self) -> [f64; 9] {
        [self.vde, self.gpe, self.fpe, self.ffe, self.vd, self.vfa, self.rpa, self.rca, self.oa]
    }

    /// Whether each metric in [`METRIC_NAMES`] order had a non-empty denominator.
    pub fn defined(&self) -> [bool; 9] {
        let c = &self.counts;
        let voiced = !c.no_voiced_ref();
        [
            true,
            !c.no_both_voiced(),
            !c.no_fine_frames(),
            true,
            voiced,
            !c.no_unvoiced_ref(),
            voiced,
            voiced,
            true,
        ]
    }

    /// `name=value` lines; undefined metrics are followed by `name_undefined=1`.
    pub fn to_key_value(&self) -> String {
        let mut out = String::new();
        for ((name, v), ok) in METRIC_NAMES.iter().zip(self.values()).zip(self.defined()) {
            let _ = writeln!(out, "{name}={v:.6}");
            if !ok {
                let _ = writeln!(out, "{name}_undefined=1");
            }
        }
        let c = &self.counts;
        let _ = writeln!(out, "total_frames={}", c.total);
        let _ = writeln!(out, "voiced_ref_frames={}", c.voiced_ref);
        let _ = writeln!(out, "unvoiced_ref_frames={}", c.unvoiced_ref);
        let _ = writeln!(out, "both_voiced_frames={}", c.both_voiced);
        out
    }

    /// One CSV row matching [`REPORT_CSV_HEADER`].
    pub fn csv_row(&self, file: &str) -> String {
        let mut row = file.to_string();
        for v in self.values() {
            let _ = write!(row, ",{v:.6}");
        }
        let c = &self.counts;
        let _ = write!(row, ",{},{},{},{}", c.total, c.voiced_ref, c.unvoiced_ref, c.both_voiced);
        row
    }
}

/// Unweighted per-file mean and sample variance of each metric. Files
/// where a metric is undefined do not contribute to that metric.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusSummary {
    pub files: usize,
    pub mean: [f64; 9],
    /// `n - 1` denominator; 0 with fewer than two contributing files.
    pub variance: [f64; 9],
    /// Files contributing to each metric.
    pub counts: [usize; 9],
}

pub fn summarize(reports: &[EvalReport]) -> CorpusSummary {
    let mut mean = [0.0; 9];
    let mut variance = [0.0; 9];
    let mut counts = [0; 9];
    for m in 0..9 {
        let xs: Vec<f64> = reports
            .iter()
            .filter(|r| r.defined()[m])
            .map(|r| r.values()[m])
            .collect();
        counts[m] = xs.len();
        if xs.is_empty() {
            continue;
        }
        let mu = xs.iter().sum::<f64>() / xs.len() as f64;
        mean[m] = mu;
        if xs.len() > 1 {
            variance[m] = xs.iter().map(|x| (x - mu).powi(2)).sum::<f64>() / (xs.len() - 1) as f64;
        }
    }
    CorpusSummary {
        files: reports.len(),
        mean,
        variance,
        counts,
    }
}

impl CorpusSummary {
    /// Two CSV rows, `mean` and `variance`, with [`REPORT_CSV_HEADER`] columns.
    /// The count columns hold totals over the corpus in the mean row.
    pub fn csv_rows(&self) -> String {
        let mut out = String::from("mean");
        for v in self.mean {
            let _ = write!(out, ",{v:.6}");
        }
        out.push_str(",,,,\nvariance");
        for v in self.variance {
            let _ = write!(out, ",{v:.6}");
        }
        out.push_str(",,,,");
        out
    }

    pub fn to_key_value(&self) -> String {
        let mut out = format!("files={}\n", self.files);
        for (i, name) in METRIC_NAMES.iter().enumerate() {
            let _ = writeln!(out, "{name}_mean={:.6}", self.mean[i]);
            let _ = writeln!(out, "{name}_var={:.6}", self.variance[i]);
        }
        out
    }
}
