//! Dense row-major tensors and the `RRST` binary file format.
//!
//! In-memory math runs in f64; files store f32 little-endian. The header is
//! magic `RRST`, version u16, dtype code u8 (1 = f32le), rank u8, then one
//! u32 per dimension, followed by the row-major payload.

use std::fs;
use std::path::Path;

use crate::{Error, Result};

pub const MAGIC: &[u8; 4] = b"RRST";
pub const VERSION: u16 = 1;
pub const DTYPE_F32LE: u8 = 1;

/// Dense row-major tensor.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    pub dims: Vec<usize>,
    pub data: Vec<f64>,
}

impl Tensor {
    pub fn zeros(dims: &[usize]) -> Self {
        let len = dims.iter().product();
        Tensor {
            dims: dims.to_vec(),
            data: vec![0.0; len],
        }
    }

    pub fn from_vec(dims: &[usize], data: Vec<f64>) -> Result<Self> {
        let expect: usize = dims.iter().product();
        if data.len() != expect {
            return Err(Error::TensorFormat(format!(
                "dims {:?} require {} elements, got {}",
                dims,
                expect,
                data.len()
            )));
        }
        Ok(Tensor {
            dims: dims.to_vec(),
            data,
        })
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Row-major matrix element access for rank-2 tensors.
    #[inline]
    pub fn at2(&self, i: usize, j: usize) -> f64 {
        debug_assert_eq!(self.dims.len(), 2);
        self.data[i * self.dims[1] + j]
    }

    #[inline]
    pub fn at2_mut(&mut self, i: usize, j: usize) -> &mut f64 {
        debug_assert_eq!(self.dims.len(), 2);
        &mut self.data[i * self.dims[1] + j]
    }

    /// Row `i` of a rank-2 tensor.
    pub fn row(&self, i: usize) -> &[f64] {
        debug_assert_eq!(self.dims.len(), 2);
        let cols = self.dims[1];
        &self.data[i * cols..(i + 1) * cols]
    }

    pub fn sq_frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum()
    }
}

/// Serialize a tensor into `RRST` bytes (f32 payload).
pub fn encode(tensor: &Tensor) -> Vec<u8> {
    let mut out = Vec::with_capacity(8 + 4 * tensor.dims.len() + 4 * tensor.len());
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.push(DTYPE_F32LE);
    out.push(tensor.dims.len() as u8);
    for &d in &tensor.dims {
        out.extend_from_slice(&(d as u32).to_le_bytes());
    }
    for &x in &tensor.data {
        out.extend_from_slice(&(x as f32).to_le_bytes());
    }
    out
}

/// Parse `RRST` bytes back into a tensor.
pub fn decode(bytes: &[u8]) -> Result<Tensor> {
    if bytes.len() < 8 {
        return Err(Error::TensorFormat(format!(
            "header truncated: {} bytes",
            bytes.len()
        )));
    }
    if &bytes[0..4] != MAGIC {
        return Err(Error::TensorFormat(format!(
            "bad magic {:02x?}, expected {:02x?}",
            &bytes[0..4],
            MAGIC
        )));
    }
    let version = u16::from_le_bytes([bytes[4], bytes[5]]);
    if version != VERSION {
        return Err(Error::TensorFormat(format!(
            "unsupported version {version}, expected {VERSION}"
        )));
    }
    let dtype = bytes[6];
    if dtype != DTYPE_F32LE {
        return Err(Error::TensorFormat(format!(
            "unsupported dtype code {dtype}, expected {DTYPE_F32LE} (f32le)"
        )));
    }
    let rank = bytes[7] as usize;
    let header_len = 8 + 4 * rank;
    if bytes.len() < header_len {
        return Err(Error::TensorFormat(format!(
            "dims truncated: {} bytes, header needs {}",
            bytes.len(),
            header_len
        )));
    }
    let mut dims = Vec::with_capacity(rank);
    for r in 0..rank {
        let off = 8 + 4 * r;
        dims.push(u32::from_le_bytes(bytes[off..off + 4].try_into().unwrap()) as usize);
    }
    let count: usize = dims.iter().product();
    let expected = header_len + 4 * count;
    if bytes.len() != expected {
        return Err(Error::TensorFormat(format!(
            "payload length mismatch: expected {} bytes total, got {}",
            expected,
            bytes.len()
        )));
    }
    let data = (0..count)
        .map(|i| {
            let off = header_len + 4 * i;
            f32::from_le_bytes(bytes[off..off + 4].try_into().unwrap()) as f64
        })
        .collect();
    Tensor::from_vec(&dims, data)
}

pub fn write_tensor(path: &Path, tensor: &Tensor) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    fs::write(path, encode(tensor))?;
    Ok(())
}

pub fn read_tensor(path: &Path) -> Result<Tensor> {
    let bytes = fs::read(path)
        .map_err(|e| Error::TensorFormat(format!("{}: {e}", path.display())))?;
    decode(&bytes)
}
