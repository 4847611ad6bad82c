//! Weight tensors and the .gwt file format.
//!
//! Layout: magic "GWT1", then version and tensor count as u32, then per
//! tensor a u16 name length, the UTF-8 name, a u8 rank, the dims as u32,
//! and the values as binary32. All integers and floats are little-endian.
//! Files are written to a temporary sibling and renamed into place.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arch::GeneratorArch;
use crate::error::MelganError;

const MAGIC: [u8; 4] = *b"GWT1";
const VERSION: u32 = 1;

/// A dense tensor with its shape.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    pub dims: Vec<usize>,
    pub data: Vec<f32>,
}

impl Tensor {
    pub fn new(dims: Vec<usize>, data: Vec<f32>) -> Self {
        assert_eq!(dims.iter().product::<usize>(), data.len(), "shape does not cover the data");
        Tensor { dims, data }
    }
}

/// Named tensors, ordered by name so files serialize deterministically.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct WeightSet {
    tensors: BTreeMap<String, Tensor>,
}

impl WeightSet {
    pub fn new() -> Self {
        WeightSet::default()
    }

    pub fn insert(&mut self, name: impl Into<String>, tensor: Tensor) {
        self.tensors.insert(name.into(), tensor);
    }

    pub fn get(&self, name: &str) -> Option<&Tensor> {
        self.tensors.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.tensors.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.tensors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tensors.is_empty()
    }
}

/// Fills every tensor of the architecture with seeded uniform noise:
/// kernels scaled by the inverse square root of their fan-in, biases small.
/// The same seed always produces the same weights.
pub fn random_weights(arch: &GeneratorArch, seed: u64) -> WeightSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut set = WeightSet::new();
    for (name, dims) in arch.tensor_shapes() {
        let limit = if dims.len() == 3 {
            (1.0 / (dims[1] * dims[2]) as f32).sqrt()
        } else {
            0.01
        };
        let n: usize = dims.iter().product();
        let data = (0..n).map(|_| rng.gen::<f32>() * 2.0 * limit - limit).collect();
        set.insert(name, Tensor::new(dims, data));
    }
    set
}

pub fn save_weights(path: &Path, set: &WeightSet) -> Result<(), MelganError> {
    let mut buf: Vec<u8> = Vec::new();
    buf.extend_from_slice(&MAGIC);
    buf.extend_from_slice(&VERSION.to_le_bytes());
    buf.extend_from_slice(&(set.tensors.len() as u32).to_le_bytes());
    for (name, tensor) in &set.tensors {
        let name_bytes = name.as_bytes();
        if name_bytes.len() > u16::MAX as usize {
            return Err(MelganError::NameTooLong(name_bytes.len()));
        }
        buf.extend_from_slice(&(name_bytes.len() as u16).to_le_bytes());
        buf.extend_from_slice(name_bytes);
        buf.push(tensor.dims.len() as u8);
        for &d in &tensor.dims {
            buf.extend_from_slice(&(d as u32).to_le_bytes());
        }
        for &v in &tensor.data {
            buf.extend_from_slice(&v.to_le_bytes());
        }
    }
    let tmp = path.with_extension("gwt.tmp");
    {
        let mut file = fs::File::create(&tmp)?;
        file.write_all(&buf)?;
        file.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize, what: &'static str) -> Result<&'a [u8], MelganError> {
        if self.bytes.len() - self.pos < n {
            return Err(MelganError::Truncated(what));
        }
        let slice = &self.bytes[self.pos..self.pos + n];
        self.pos += n;
        Ok(slice)
    }

    fn u16(&mut self, what: &'static str) -> Result<u16, MelganError> {
        Ok(u16::from_le_bytes(self.take(2, what)?.try_into().unwrap()))
    }

    fn u32(&mut self, what: &'static str) -> Result<u32, MelganError> {
        Ok(u32::from_le_bytes(self.take(4, what)?.try_into().unwrap()))
    }

    fn remaining(&self) -> usize {
        self.bytes.len() - self.pos
    }
}

pub fn load_weights(path: &Path) -> Result<WeightSet, MelganError> {
    let bytes = fs::read(path)?;
    let mut r = Reader { bytes: &bytes, pos: 0 };
    let magic: [u8; 4] = r.take(4, "magic")?.try_into().unwrap();
    if magic != MAGIC {
        return Err(MelganError::BadMagic(magic));
    }
    let version = r.u32("version")?;
    if version != VERSION {
        return Err(MelganError::UnsupportedVersion(version));
    }
    let count = r.u32("tensor count")?;
    let mut set = WeightSet::new();
    for _ in 0..count {
        let name_len = r.u16("tensor name length")? as usize;
        let name_bytes = r.take(name_len, "tensor name")?;
        let name = std::str::from_utf8(name_bytes)
            .map_err(|_| MelganError::Truncated("tensor name (not UTF-8)"))?
            .to_owned();
        let rank = r.take(1, "tensor rank")?[0] as usize;
        let mut dims = Vec::with_capacity(rank);
        for _ in 0..rank {
            dims.push(r.u32("tensor dims")? as usize);
        }
        let n = dims
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .ok_or_else(|| MelganError::Oversized(name.clone()))?;
        let byte_len = n.checked_mul(4).ok_or_else(|| MelganError::Oversized(name.clone()))?;
        if r.remaining() < byte_len {
            return Err(MelganError::Truncated("tensor values"));
        }
        let raw = r.take(byte_len, "tensor values")?;
        let data = raw
            .chunks_exact(4)
            .map(|c| f32::from_le_bytes(c.try_into().unwrap()))
            .collect();
        if set.get(&name).is_some() {
            return Err(MelganError::DuplicateTensor(name));
        }
        set.insert(name, Tensor { dims, data });
    }
    if r.remaining() > 0 {
        return Err(MelganError::TrailingBytes(r.remaining()));
    }
    Ok(set)
}
