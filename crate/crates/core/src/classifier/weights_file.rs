//! HF0W weight files.
//!
//! Little-endian throughout:
//!
//! ```text
//! "HF0W" | u32 version = 1 | u32 input_lags | u32 context | u32 tensor_count
//! per tensor: u16 name_len | name (UTF-8) | u8 rank | u32 dims[rank] | f32 payload (row-major)
//! ```

use std::fs;
use std::path::Path;

use super::{ModelWeights, Tensor};
use crate::error::{Error, Result};

const MAGIC: &[u8; 4] = b"HF0W";
const VERSION: u32 = 1;

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize, what: &str) -> Result<&'a [u8]> {
        let end = self
            .pos
            .checked_add(n)
            .filter(|&e| e <= self.bytes.len())
            .ok_or_else(|| Error::UnexpectedEof(what.to_string()))?;
        let out = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(out)
    }

    fn u8(&mut self, what: &str) -> Result<u8> {
        Ok(self.take(1, what)?[0])
    }

    fn u16(&mut self, what: &str) -> Result<u16> {
        Ok(u16::from_le_bytes(self.take(2, what)?.try_into().unwrap()))
    }

    fn u32(&mut self, what: &str) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4, what)?.try_into().unwrap()))
    }
}

pub fn load_weights(path: impl AsRef<Path>) -> Result<ModelWeights> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    parse_weights(&bytes)
}

pub fn parse_weights(bytes: &[u8]) -> Result<ModelWeights> {
    let mut r = Reader { bytes, pos: 0 };
    let magic: [u8; 4] = r.take(4, "magic")?.try_into().unwrap();
    if &magic != MAGIC {
        return Err(Error::BadMagic(magic));
    }
    let version = r.u32("version")?;
    if version != VERSION {
        return Err(Error::Version(version));
    }
    let input_lags = r.u32("input_lags")? as usize;
    let context = r.u32("context")? as usize;
    let count = r.u32("tensor count")?;
    let mut tensors = Vec::with_capacity(count as usize);
    for i in 0..count {
        let name_len = r.u16(&format!("tensor {i} name length"))? as usize;
        let name = std::str::from_utf8(r.take(name_len, &format!("tensor {i} name"))?)
            .map_err(|_| Error::Invariant(format!("tensor {i} name is not UTF-8")))?
            .to_string();
        let rank = r.u8(&format!("{name} rank"))? as usize;
        let dims = (0..rank)
            .map(|_| r.u32(&format!("{name} dims")).map(|d| d as usize))
            .collect::<Result<Vec<_>>>()?;
        let len = dims
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .ok_or_else(|| Error::Invariant(format!("{name} dims overflow")))?;
        let payload = r.take(
            len.checked_mul(4).ok_or_else(|| Error::UnexpectedEof(format!("{name} payload")))?,
            &format!("{name} payload"),
        )?;
        let data = payload
            .chunks_exact(4)
            .map(|c| f32::from_le_bytes(c.try_into().unwrap()) as f64)
            .collect();
        tensors.push((name, Tensor { dims, data }));
    }
    ModelWeights::from_tensors(input_lags, context, tensors)
}

/// Serializes `w`; parameters are narrowed to `f32`.
pub fn weights_to_bytes(w: &ModelWeights) -> Vec<u8> {
    let tensors = w.tensors();
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    for v in [VERSION, w.input_lags() as u32, w.context() as u32, tensors.len() as u32] {
        out.extend_from_slice(&v.to_le_bytes());
    }
    for (name, t) in &tensors {
        out.extend_from_slice(&(name.len() as u16).to_le_bytes());
        out.extend_from_slice(name.as_bytes());
        out.push(t.dims.len() as u8);
        for d in &t.dims {
            out.extend_from_slice(&(*d as u32).to_le_bytes());
        }
        for v in &t.data {
            out.extend_from_slice(&(*v as f32).to_le_bytes());
        }
    }
    out
}

pub fn save_weights(w: &ModelWeights, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, weights_to_bytes(w)).map_err(|e| Error::io(path, e))
}
