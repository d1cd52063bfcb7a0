use std::path::PathBuf;

use thiserror::Error;

use crate::bands::BandLabel;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed WAV: {0}")]
    Wav(String),

    #[error("unsupported format: {field} = {value}")]
    UnsupportedFormat { field: &'static str, value: String },

    #[error("invalid audio: {0}")]
    InvalidAudio(String),

    #[error("sample rate mismatch: {left} Hz vs {right} Hz")]
    RateMismatch { left: u32, right: u32 },

    #[error("noise too short: {noise} samples for {clean} clean samples")]
    NoiseTooShort { noise: usize, clean: usize },

    #[error("{which} signal has zero energy")]
    ZeroEnergy { which: &'static str },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid pitch track: {0}")]
    InvalidTrack(String),

    #[error("f0 {f0} Hz out of range [50, 800) at line {line}")]
    F0OutOfRange { line: usize, f0: f64 },

    #[error("frequency {0} Hz outside the band table [50, 800)")]
    FrequencyOutOfRange(f64),

    #[error("band label {0} has no frequency edges")]
    NoBand(BandLabel),

    #[error("expected audio at {expected} Hz, got {actual} Hz (resample first)")]
    UnsupportedRate { expected: u32, actual: u32 },

    #[error("label count {labels} does not match frame count {frames}")]
    LabelCount { labels: usize, frames: usize },

    #[error("bad magic {0:?}, expected \"HF0W\"")]
    BadMagic([u8; 4]),

    #[error("unsupported weight file version {0}")]
    Version(u32),

    #[error("unexpected end of file while reading {0}")]
    UnexpectedEof(String),

    #[error("tensor {name}: expected shape {expected:?}, found {found:?}")]
    Shape {
        name: String,
        expected: Vec<usize>,
        found: Vec<usize>,
    },

    #[error("missing tensor {0}")]
    MissingTensor(String),

    #[error("tensor {0} contains non-finite values")]
    NonFinite(String),

    #[error("weight invariant violated: {0}")]
    Invariant(String),

    #[error("input grid is {rows}x{cols}, model expects {want_rows}x{want_cols}")]
    InputShape {
        rows: usize,
        cols: usize,
        want_rows: usize,
        want_cols: usize,
    },

    #[error("{0}: no matching reference file")]
    Unpaired(PathBuf),

    #[error("{0} and {1} must both be files or both be directories")]
    PathKinds(PathBuf, PathBuf),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
