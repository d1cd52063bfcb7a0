//! Minimal RIFF/WAVE reader and writer: PCM 16-bit and IEEE float 32-bit.

use std::fs;
use std::path::Path;

use super::AudioBuffer;
use crate::error::{Error, Result};

const FORMAT_PCM: u16 = 0x0001;
const FORMAT_FLOAT: u16 = 0x0003;
const FORMAT_EXTENSIBLE: u16 = 0xFFFE;

#[derive(Debug, Clone, Copy)]
struct FmtChunk {
    format_tag: u16,
    channels: u16,
    sample_rate: u32,
    block_align: u16,
    bits_per_sample: u16,
}

/// Reads a WAV file, averaging stereo to mono.
pub fn load_wav(path: impl AsRef<Path>) -> Result<AudioBuffer> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    parse_wav(&bytes)
}

/// Parses an in-memory WAV file.
pub fn parse_wav(bytes: &[u8]) -> Result<AudioBuffer> {
    if bytes.len() < 12 || &bytes[0..4] != b"RIFF" || &bytes[8..12] != b"WAVE" {
        return Err(Error::Wav("missing RIFF/WAVE header".into()));
    }
    let mut fmt = None;
    let mut data: Option<&[u8]> = None;
    let mut pos = 12;
    while pos + 8 <= bytes.len() {
        let id = &bytes[pos..pos + 4];
        let size = u32::from_le_bytes(bytes[pos + 4..pos + 8].try_into().unwrap()) as usize;
        let body_start = pos + 8;
        // tolerate a data chunk whose declared size runs past EOF
        let body_end = body_start.saturating_add(size).min(bytes.len());
        let body = &bytes[body_start..body_end];
        match id {
            b"fmt " => fmt = Some(parse_fmt(body)?),
            b"data" => data = Some(body),
            _ => {}
        }
        pos = body_start.saturating_add(size).saturating_add(size & 1);
    }
    let fmt = fmt.ok_or_else(|| Error::Wav("missing fmt chunk".into()))?;
    let data = data.ok_or_else(|| Error::Wav("missing data chunk".into()))?;
    decode(&fmt, data)
}

fn parse_fmt(body: &[u8]) -> Result<FmtChunk> {
    if body.len() < 16 {
        return Err(Error::Wav(format!("fmt chunk too short ({} bytes)", body.len())));
    }
    let u16_at = |i: usize| u16::from_le_bytes([body[i], body[i + 1]]);
    let mut format_tag = u16_at(0);
    if format_tag == FORMAT_EXTENSIBLE {
        // the sub-format GUID starts at offset 24; its first two bytes carry the tag
        if body.len() < 26 {
            return Err(Error::Wav("extensible fmt chunk too short".into()));
        }
        format_tag = u16_at(24);
    }
    Ok(FmtChunk {
        format_tag,
        channels: u16_at(2),
        sample_rate: u32::from_le_bytes(body[4..8].try_into().unwrap()),
        block_align: u16_at(12),
        bits_per_sample: u16_at(14),
    })
}

fn decode(fmt: &FmtChunk, data: &[u8]) -> Result<AudioBuffer> {
    match fmt.format_tag {
        FORMAT_PCM | FORMAT_FLOAT => {}
        other => {
            return Err(Error::UnsupportedFormat {
                field: "format tag",
                value: format!("0x{other:04X} (only PCM and IEEE float are supported)"),
            })
        }
    }
    let expected_bits = if fmt.format_tag == FORMAT_PCM { 16 } else { 32 };
    if fmt.bits_per_sample != expected_bits {
        return Err(Error::UnsupportedFormat {
            field: "bits per sample",
            value: format!(
                "{} (expected {expected_bits} for format tag 0x{:04X})",
                fmt.bits_per_sample, fmt.format_tag
            ),
        });
    }
    if fmt.channels != 1 && fmt.channels != 2 {
        return Err(Error::UnsupportedFormat {
            field: "channels",
            value: fmt.channels.to_string(),
        });
    }
    if fmt.sample_rate == 0 {
        return Err(Error::UnsupportedFormat {
            field: "sample rate",
            value: "0".into(),
        });
    }
    let width = (fmt.bits_per_sample / 8) as usize;
    let frame_bytes = width * fmt.channels as usize;
    if fmt.block_align as usize != frame_bytes {
        return Err(Error::UnsupportedFormat {
            field: "block align",
            value: format!("{} (expected {frame_bytes})", fmt.block_align),
        });
    }

    let read = |chunk: &[u8]| -> f64 {
        if width == 2 {
            i16::from_le_bytes([chunk[0], chunk[1]]) as f64 / 32768.0
        } else {
            f32::from_le_bytes(chunk.try_into().unwrap()) as f64
        }
    };
    let samples: Vec<f64> = data
        .chunks_exact(frame_bytes)
        .map(|frame| {
            if fmt.channels == 1 {
                read(frame)
            } else {
                0.5 * (read(&frame[..width]) + read(&frame[width..]))
            }
        })
        .collect();
    AudioBuffer::new(samples, fmt.sample_rate)
}

fn header(format_tag: u16, bits: u16, rate: u32, data_len: usize) -> Vec<u8> {
    let block_align = bits / 8;
    let mut out = Vec::with_capacity(44 + data_len);
    out.extend_from_slice(b"RIFF");
    out.extend_from_slice(&((36 + data_len) as u32).to_le_bytes());
    out.extend_from_slice(b"WAVEfmt ");
    out.extend_from_slice(&16u32.to_le_bytes());
    out.extend_from_slice(&format_tag.to_le_bytes());
    out.extend_from_slice(&1u16.to_le_bytes());
    out.extend_from_slice(&rate.to_le_bytes());
    out.extend_from_slice(&(rate * block_align as u32).to_le_bytes());
    out.extend_from_slice(&block_align.to_le_bytes());
    out.extend_from_slice(&bits.to_le_bytes());
    out.extend_from_slice(b"data");
    out.extend_from_slice(&(data_len as u32).to_le_bytes());
    out
}

/// Writes a mono IEEE float WAV. Samples are not clipped.
pub fn write_wav_f32(buf: &AudioBuffer, path: impl AsRef<Path>) -> Result<()> {
    let mut out = header(FORMAT_FLOAT, 32, buf.sample_rate(), buf.len() * 4);
    for &s in buf.samples() {
        out.extend_from_slice(&(s as f32).to_le_bytes());
    }
    let path = path.as_ref();
    fs::write(path, out).map_err(|e| Error::io(path, e))
}

/// Writes a mono 16-bit PCM WAV, saturating samples outside [-1, 1).
pub fn write_wav_pcm16(buf: &AudioBuffer, path: impl AsRef<Path>) -> Result<()> {
    let mut out = header(FORMAT_PCM, 16, buf.sample_rate(), buf.len() * 2);
    for &s in buf.samples() {
        let v = (s * 32768.0).round().clamp(-32768.0, 32767.0) as i16;
        out.extend_from_slice(&v.to_le_bytes());
    }
    let path = path.as_ref();
    fs::write(path, out).map_err(|e| Error::io(path, e))
}
