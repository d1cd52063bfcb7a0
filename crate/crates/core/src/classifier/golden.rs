//! Golden forward-pass fixtures: `u32 count`, then per fixture the input
//! grid (`context * lags` values) followed by nine posteriors, all
//! little-endian `f32`.

use std::fs;
use std::path::Path;

use super::FeatureInput;
use crate::bands::NUM_CLASSES;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct GoldenFixture {
    pub input: FeatureInput,
    pub posterior: [f64; NUM_CLASSES],
}

pub fn read_golden_fixtures(path: impl AsRef<Path>, context: usize, lags: usize) -> Result<Vec<GoldenFixture>> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    parse_golden_fixtures(&bytes, context, lags)
}

pub fn parse_golden_fixtures(bytes: &[u8], context: usize, lags: usize) -> Result<Vec<GoldenFixture>> {
    let count = bytes
        .get(..4)
        .map(|b| u32::from_le_bytes(b.try_into().unwrap()) as usize)
        .ok_or_else(|| Error::UnexpectedEof("fixture count".into()))?;
    let per = context * lags + NUM_CLASSES;
    let floats: Vec<f64> = bytes[4..]
        .chunks_exact(4)
        .map(|c| f32::from_le_bytes(c.try_into().unwrap()) as f64)
        .collect();
    if floats.len() < count * per {
        return Err(Error::UnexpectedEof(format!(
            "fixture payload ({} of {} values)",
            floats.len(),
            count * per
        )));
    }
    floats
        .chunks_exact(per)
        .take(count)
        .map(|chunk| {
            let (grid, post) = chunk.split_at(context * lags);
            Ok(GoldenFixture {
                input: FeatureInput::new(context, lags, grid.to_vec())?,
                posterior: post.try_into().unwrap(),
            })
        })
        .collect()
}
