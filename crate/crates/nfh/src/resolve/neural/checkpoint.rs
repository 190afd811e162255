//! Resolver checkpoint file (`.nfhr`).
//!
//! Layout, all integers and floats little-endian:
//!
//! ```text
//! magic "NFHR" | version u32 | rng seed u64
//! config echo: u32 length + UTF-8 JSON
//! word table: u32 word count, per word (u32 length + UTF-8),
//!             u32 word_dim, f32 vectors (count x dim), f32 unk (dim)
//! dims: u32 char_dim | char_hidden | ctx_hidden | mlp_hidden | f64 dropout
//! tensors: u32 count, per tensor (u32 name length + UTF-8, u32 rank,
//!          u32 dims..., f32 data)
//! ```
//!
//! The word table travels with the checkpoint so `resolve` runs without the
//! original embedding file.

use std::collections::HashMap;
use std::io::{Read, Write};
use std::path::Path;

use super::{ResolverConfig, ResolverParams, Tensor, TENSOR_COUNT};
use crate::identify::linear::ByteReader;
use crate::{NfhError, Result};

const MAGIC: &[u8; 4] = b"NFHR";
const FORMAT_VERSION: u32 = 1;

/// Write a checkpoint: the params, the seed they were trained with, and a
/// JSON echo of the training configuration.
pub fn save_checkpoint(
    path: &Path,
    params: &ResolverParams,
    seed: u64,
    config_echo: &str,
) -> Result<()> {
    let mut buf: Vec<u8> = Vec::new();
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    buf.extend_from_slice(&seed.to_le_bytes());

    write_str(&mut buf, config_echo);

    buf.extend_from_slice(&(params.vocab.len() as u32).to_le_bytes());
    for w in &params.vocab {
        write_str(&mut buf, w);
    }
    buf.extend_from_slice(&(params.word_dim as u32).to_le_bytes());
    for v in &params.word_vectors {
        buf.extend_from_slice(&(*v as f32).to_le_bytes());
    }
    for v in &params.unk_vector {
        buf.extend_from_slice(&(*v as f32).to_le_bytes());
    }

    for dim in [
        params.config.char_dim,
        params.config.char_hidden,
        params.config.ctx_hidden,
        params.config.mlp_hidden,
    ] {
        buf.extend_from_slice(&(dim as u32).to_le_bytes());
    }
    buf.extend_from_slice(&params.config.dropout.to_le_bytes());

    buf.extend_from_slice(&(params.tensors.len() as u32).to_le_bytes());
    for t in &params.tensors {
        write_str(&mut buf, &t.name);
        buf.extend_from_slice(&(t.shape.len() as u32).to_le_bytes());
        for d in &t.shape {
            buf.extend_from_slice(&(*d as u32).to_le_bytes());
        }
        for v in &t.data {
            buf.extend_from_slice(&(*v as f32).to_le_bytes());
        }
    }

    let mut file = std::fs::File::create(path)
        .map_err(|e| NfhError::io(path.display().to_string(), e))?;
    file.write_all(&buf)
        .map_err(|e| NfhError::io(path.display().to_string(), e))
}

/// Read a checkpoint back; returns the params, the recorded seed and the
/// config echo.
pub fn load_checkpoint(path: &Path) -> Result<(ResolverParams, u64, String)> {
    let mut bytes = Vec::new();
    std::fs::File::open(path)
        .map_err(|e| NfhError::validation("model", format!("cannot open {}: {e}", path.display())))?
        .read_to_end(&mut bytes)
        .map_err(|e| NfhError::io(path.display().to_string(), e))?;
    let mut r = ByteReader::new(&bytes);

    if r.take(4)? != MAGIC {
        return Err(NfhError::format("not an NFHR checkpoint"));
    }
    let version = r.u32()?;
    if version != FORMAT_VERSION {
        return Err(NfhError::format(format!("unsupported NFHR version {version}")));
    }
    let seed = r.u64()?;
    let config_echo = read_str(&mut r)?;

    let word_count = r.u32()? as usize;
    let mut vocab = Vec::with_capacity(word_count);
    for _ in 0..word_count {
        vocab.push(read_str(&mut r)?);
    }
    let word_dim = r.u32()? as usize;
    let mut word_vectors = Vec::with_capacity(word_count * word_dim);
    for _ in 0..word_count * word_dim {
        word_vectors.push(r.f32()? as f64);
    }
    let mut unk_vector = Vec::with_capacity(word_dim);
    for _ in 0..word_dim {
        unk_vector.push(r.f32()? as f64);
    }

    let config = ResolverConfig {
        char_dim: r.u32()? as usize,
        char_hidden: r.u32()? as usize,
        ctx_hidden: r.u32()? as usize,
        mlp_hidden: r.u32()? as usize,
        dropout: f64::from_le_bytes(r.take(8)?.try_into().unwrap()),
    };

    let tensor_count = r.u32()? as usize;
    if tensor_count != TENSOR_COUNT {
        return Err(NfhError::format(format!(
            "checkpoint has {tensor_count} tensors, expected {TENSOR_COUNT}"
        )));
    }
    let mut tensors = Vec::with_capacity(tensor_count);
    for _ in 0..tensor_count {
        let name = read_str(&mut r)?;
        let rank = r.u32()? as usize;
        let mut shape = Vec::with_capacity(rank);
        for _ in 0..rank {
            shape.push(r.u32()? as usize);
        }
        let len: usize = shape.iter().product();
        let mut data = Vec::with_capacity(len);
        for _ in 0..len {
            data.push(r.f32()? as f64);
        }
        tensors.push(Tensor { name, shape, data });
    }
    if !r.at_end() {
        return Err(NfhError::format("trailing bytes in NFHR checkpoint"));
    }

    let word_index: HashMap<String, usize> = vocab
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i))
        .collect();
    let params = ResolverParams {
        config,
        word_dim,
        vocab,
        word_index,
        word_vectors,
        unk_vector,
        tensors,
    };
    Ok((params, seed, config_echo))
}

fn write_str(buf: &mut Vec<u8>, s: &str) {
    buf.extend_from_slice(&(s.len() as u32).to_le_bytes());
    buf.extend_from_slice(s.as_bytes());
}

fn read_str(r: &mut ByteReader) -> Result<String> {
    let len = r.u32()? as usize;
    let bytes = r.take(len)?;
    String::from_utf8(bytes.to_vec()).map_err(|_| NfhError::format("bad UTF-8 in checkpoint"))
}
