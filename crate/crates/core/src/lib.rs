//! Band-guided fundamental frequency extraction.
//!
//! A pitch track is produced in two stages. A small convolutional classifier
//! looks at five neighbouring frames of normalized autocorrelation and picks
//! one of eight pitch bands (or "unvoiced"). The decoder then band-pass
//! filters the signal with an elliptic filter for that band and reads the
//! period off a double autocorrelation, refined by parabolic interpolation.
//!
//! ```no_run
//! use bandpitch::{audio, classifier, decoder};
//!
//! let wav = audio::load_wav("voice.wav")?;
//! let buf = audio::resample(&wav, bandpitch::PIPELINE_RATE)?;
//! let model = classifier::load_weights("model.hf0w")?;
//! let labels = classifier::classify_track(&model, &buf)?;
//! let track = decoder::decode_pitch(&buf, &labels)?;
//! track.write_csv("voice.f0.csv")?;
//! # Ok::<(), bandpitch::Error>(())
//! ```
//!
//! Decoding can also be driven by labels derived from a reference track
//! (see [`bands::oracle_frame_labels`]), which exercises the signal
//! processing stage without any trained model.

pub mod audio;
pub mod bands;
pub mod classifier;
pub mod cli;
pub mod decoder;
pub mod dsp;
mod error;
pub mod filterbank;
pub mod metrics;
pub mod synth;
pub mod track;

pub use audio::AudioBuffer;
pub use bands::BandLabel;
pub use error::{Error, Result};
pub use track::{PitchEntry, PitchTrack};

/// Sample rate the whole pipeline runs at.
pub const PIPELINE_RATE: u32 = 16_000;
