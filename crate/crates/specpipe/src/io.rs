//! Spectrogram file format.
//!
//! Layout, all integers little-endian:
//! magic "LMS1" | u32 version=1 | u32 sample_rate | u32 fft_size |
//! u32 frame_size | u32 frame_step | u32 num_bins | u64 num_frames |
//! num_frames × num_bins float32 values, time-major.

use std::fs;
use std::path::Path;

use crate::error::SpecError;
use crate::spectrogram::LogMagSpectrogram;

const MAGIC: &[u8; 4] = b"LMS1";
const VERSION: u32 = 1;

/// Serializes a spectrogram, writing a sibling temp file first and renaming
/// it into place so readers never observe a partial file.
pub fn save_spectrogram(spec: &LogMagSpectrogram, path: &Path) -> Result<(), SpecError> {
    spec.check_frame_widths()?;
    let num_bins = spec.num_bins();
    let mut bytes =
        Vec::with_capacity(4 + 4 * 6 + 8 + spec.num_frames() * num_bins * 4);
    bytes.extend_from_slice(MAGIC);
    bytes.extend_from_slice(&VERSION.to_le_bytes());
    bytes.extend_from_slice(&spec.sample_rate.to_le_bytes());
    bytes.extend_from_slice(&(spec.fft_size as u32).to_le_bytes());
    bytes.extend_from_slice(&(spec.frame_size as u32).to_le_bytes());
    bytes.extend_from_slice(&(spec.frame_step as u32).to_le_bytes());
    bytes.extend_from_slice(&(num_bins as u32).to_le_bytes());
    bytes.extend_from_slice(&(spec.num_frames() as u64).to_le_bytes());
    for frame in &spec.frames {
        for v in frame {
            bytes.extend_from_slice(&v.to_le_bytes());
        }
    }
    let tmp = tmp_sibling(path);
    fs::write(&tmp, &bytes)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn tmp_sibling(path: &Path) -> std::path::PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".tmp");
    path.with_file_name(name)
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize, what: &'static str) -> Result<&'a [u8], SpecError> {
        let remaining = self.buf.len() - self.pos;
        if remaining < n {
            return Err(SpecError::Truncated { what, needed: n - remaining });
        }
        let slice = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(slice)
    }

    fn u32(&mut self, what: &'static str) -> Result<u32, SpecError> {
        Ok(u32::from_le_bytes(self.take(4, what)?.try_into().unwrap()))
    }

    fn u64(&mut self, what: &'static str) -> Result<u64, SpecError> {
        Ok(u64::from_le_bytes(self.take(8, what)?.try_into().unwrap()))
    }
}

pub fn load_spectrogram(path: &Path) -> Result<LogMagSpectrogram, SpecError> {
    let bytes = fs::read(path)?;
    let mut r = Reader { buf: &bytes, pos: 0 };
    let magic = r.take(4, "magic")?;
    if magic != MAGIC {
        return Err(SpecError::BadMagic { got: magic.try_into().unwrap() });
    }
    let version = r.u32("version")?;
    if version != VERSION {
        return Err(SpecError::UnsupportedVersion(version));
    }
    let sample_rate = r.u32("sample_rate")?;
    let fft_size = r.u32("fft_size")? as usize;
    let frame_size = r.u32("frame_size")? as usize;
    let frame_step = r.u32("frame_step")? as usize;
    let num_bins = r.u32("num_bins")? as usize;
    let num_frames = r.u64("num_frames")? as usize;
    let expected_bins = fft_size / 2 + 1;
    if num_bins != expected_bins {
        return Err(SpecError::HeaderBinCount { fft_size, expected: expected_bins, got: num_bins });
    }
    let mut frames = Vec::with_capacity(num_frames);
    for _ in 0..num_frames {
        let raw = r.take(num_bins * 4, "frame payload")?;
        frames.push(
            raw.chunks_exact(4)
                .map(|c| f32::from_le_bytes(c.try_into().unwrap()))
                .collect(),
        );
    }
    let trailing = bytes.len() - r.pos;
    if trailing != 0 {
        return Err(SpecError::TrailingBytes { got: trailing });
    }
    Ok(LogMagSpectrogram { sample_rate, fft_size, frame_size, frame_step, frames })
}
