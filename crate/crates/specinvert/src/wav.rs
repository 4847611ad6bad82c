//! Mono PCM16 WAV reading and writing.
//!
//! Samples are exposed as f64 in [−1, 1), scaled by 1/32768. Writing
//! quantizes with round-half-away-from-zero and clamps to the PCM16 range,
//! so values already on the 16-bit grid survive a round trip bit-exactly.

use std::fs;
use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum WavError {
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("not a RIFF file")]
    NotRiff,
    #[error("not a WAVE file")]
    NotWave,
    #[error("missing {0} chunk")]
    MissingChunk(&'static str),
    #[error("file truncated while reading {0}")]
    Truncated(&'static str),
    #[error("audio format {0} is not PCM")]
    NotPcm(u16),
    #[error("{0} channels, expected mono")]
    NotMono(u16),
    #[error("{0} bits per sample, expected 16")]
    NotSixteenBit(u16),
    #[error("sample rate {got} Hz, expected {expected} Hz")]
    WrongRate { got: u32, expected: u32 },
}

/// Mono clip at a fixed sample rate.
#[derive(Debug, Clone, PartialEq)]
pub struct WavClip {
    pub sample_rate: u32,
    pub samples: Vec<f64>,
}

/// Round-half-away-from-zero quantization to the PCM16 grid.
pub fn quantize(sample: f64) -> i16 {
    let scaled = (sample * 32768.0).round();
    scaled.clamp(-32768.0, 32767.0) as i16
}

pub fn wav_read(path: &Path) -> Result<WavClip, WavError> {
    let bytes = fs::read(path)?;
    if bytes.len() < 12 {
        return Err(WavError::Truncated("RIFF header"));
    }
    if &bytes[0..4] != b"RIFF" {
        return Err(WavError::NotRiff);
    }
    if &bytes[8..12] != b"WAVE" {
        return Err(WavError::NotWave);
    }
    let mut fmt: Option<(u16, u16, u32, u16)> = None;
    let mut data: Option<&[u8]> = None;
    let mut pos = 12usize;
    while pos + 8 <= bytes.len() {
        let id = &bytes[pos..pos + 4];
        let size = u32::from_le_bytes(bytes[pos + 4..pos + 8].try_into().unwrap()) as usize;
        let body_start = pos + 8;
        if bytes.len() - body_start < size {
            return Err(WavError::Truncated("chunk body"));
        }
        let body = &bytes[body_start..body_start + size];
        match id {
            b"fmt " => {
                if size < 16 {
                    return Err(WavError::Truncated("fmt chunk"));
                }
                let format = u16::from_le_bytes(body[0..2].try_into().unwrap());
                let channels = u16::from_le_bytes(body[2..4].try_into().unwrap());
                let rate = u32::from_le_bytes(body[4..8].try_into().unwrap());
                let bits = u16::from_le_bytes(body[14..16].try_into().unwrap());
                fmt = Some((format, channels, rate, bits));
            }
            b"data" => data = Some(body),
            _ => {}
        }
        pos = body_start + size + (size & 1);
    }
    let (format, channels, rate, bits) = fmt.ok_or(WavError::MissingChunk("fmt "))?;
    let data = data.ok_or(WavError::MissingChunk("data"))?;
    if format != 1 {
        return Err(WavError::NotPcm(format));
    }
    if channels != 1 {
        return Err(WavError::NotMono(channels));
    }
    if bits != 16 {
        return Err(WavError::NotSixteenBit(bits));
    }
    if data.len() % 2 != 0 {
        return Err(WavError::Truncated("sample data"));
    }
    let samples = data
        .chunks_exact(2)
        .map(|c| i16::from_le_bytes(c.try_into().unwrap()) as f64 / 32768.0)
        .collect();
    Ok(WavClip { sample_rate: rate, samples })
}

/// Reads a clip and rejects any sample rate other than `expected`.
pub fn wav_read_expecting(path: &Path, expected: u32) -> Result<WavClip, WavError> {
    let clip = wav_read(path)?;
    if clip.sample_rate != expected {
        return Err(WavError::WrongRate { got: clip.sample_rate, expected });
    }
    Ok(clip)
}

pub fn wav_write(path: &Path, clip: &WavClip) -> Result<(), WavError> {
    let n = clip.samples.len();
    let data_len = (n * 2) as u32;
    let mut bytes = Vec::with_capacity(44 + n * 2);
    bytes.extend_from_slice(b"RIFF");
    bytes.extend_from_slice(&(36 + data_len).to_le_bytes());
    bytes.extend_from_slice(b"WAVE");
    bytes.extend_from_slice(b"fmt ");
    bytes.extend_from_slice(&16u32.to_le_bytes());
    bytes.extend_from_slice(&1u16.to_le_bytes());
    bytes.extend_from_slice(&1u16.to_le_bytes());
    bytes.extend_from_slice(&clip.sample_rate.to_le_bytes());
    bytes.extend_from_slice(&(clip.sample_rate * 2).to_le_bytes());
    bytes.extend_from_slice(&2u16.to_le_bytes());
    bytes.extend_from_slice(&16u16.to_le_bytes());
    bytes.extend_from_slice(b"data");
    bytes.extend_from_slice(&data_len.to_le_bytes());
    for &s in &clip.samples {
        bytes.extend_from_slice(&quantize(s).to_le_bytes());
    }
    let tmp = path.with_extension("wav.tmp");
    fs::write(&tmp, &bytes)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn quantization_rounds_half_away_from_zero_and_clamps() {
        assert_eq!(quantize(0.0), 0);
        assert_eq!(quantize(100.5 / 32768.0), 101);
        assert_eq!(quantize(-100.5 / 32768.0), -101);
        assert_eq!(quantize(1.0), 32767);
        assert_eq!(quantize(-1.0), -32768);
        assert_eq!(quantize(7.3), 32767);
        assert_eq!(quantize(-7.3), -32768);
    }

    #[test]
    fn grid_samples_round_trip_bit_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let samples: Vec<f64> =
            (0..4000).map(|_| rng.gen_range(-32768i32..=32767) as f64 / 32768.0).collect();
        let clip = WavClip { sample_rate: 16_000, samples };
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("clip.wav");
        wav_write(&path, &clip).unwrap();
        let back = wav_read_expecting(&path, 16_000).unwrap();
        assert_eq!(back, clip);
        assert_eq!(fs::metadata(&path).unwrap().len(), 44 + 8000);
    }

    #[test]
    fn empty_clip_is_a_valid_forty_four_byte_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("empty.wav");
        wav_write(&path, &WavClip { sample_rate: 16_000, samples: vec![] }).unwrap();
        assert_eq!(fs::metadata(&path).unwrap().len(), 44);
        let back = wav_read(&path).unwrap();
        assert!(back.samples.is_empty());
        assert_eq!(back.sample_rate, 16_000);
    }

    #[test]
    fn wrong_rate_is_named_in_the_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("hi.wav");
        let clip = WavClip { sample_rate: 44_100, samples: vec![0.25; 10] };
        wav_write(&path, &clip).unwrap();
        match wav_read_expecting(&path, 16_000) {
            Err(WavError::WrongRate { got, expected }) => {
                assert_eq!(got, 44_100);
                assert_eq!(expected, 16_000);
            }
            other => panic!("expected rate rejection, got {other:?}"),
        }
    }

    #[test]
    fn malformed_headers_get_distinct_diagnostics() {
        let dir = tempfile::tempdir().unwrap();
        let good = dir.path().join("good.wav");
        wav_write(&good, &WavClip { sample_rate: 16_000, samples: vec![0.1; 4] }).unwrap();
        let bytes = fs::read(&good).unwrap();

        let not_riff = dir.path().join("a.wav");
        let mut b = bytes.clone();
        b[0..4].copy_from_slice(b"JUNK");
        fs::write(&not_riff, &b).unwrap();
        assert!(matches!(wav_read(&not_riff), Err(WavError::NotRiff)));

        let not_wave = dir.path().join("b.wav");
        let mut b = bytes.clone();
        b[8..12].copy_from_slice(b"AVI ");
        fs::write(&not_wave, &b).unwrap();
        assert!(matches!(wav_read(&not_wave), Err(WavError::NotWave)));

        let stereo = dir.path().join("c.wav");
        let mut b = bytes.clone();
        b[22..24].copy_from_slice(&2u16.to_le_bytes());
        fs::write(&stereo, &b).unwrap();
        assert!(matches!(wav_read(&stereo), Err(WavError::NotMono(2))));

        let float_fmt = dir.path().join("d.wav");
        let mut b = bytes.clone();
        b[20..22].copy_from_slice(&3u16.to_le_bytes());
        fs::write(&float_fmt, &b).unwrap();
        assert!(matches!(wav_read(&float_fmt), Err(WavError::NotPcm(3))));

        let eight_bit = dir.path().join("e.wav");
        let mut b = bytes.clone();
        b[34..36].copy_from_slice(&8u16.to_le_bytes());
        fs::write(&eight_bit, &b).unwrap();
        assert!(matches!(wav_read(&eight_bit), Err(WavError::NotSixteenBit(8))));

        let cut = dir.path().join("f.wav");
        fs::write(&cut, &bytes[..bytes.len() - 3]).unwrap();
        assert!(matches!(wav_read(&cut), Err(WavError::Truncated(_))));
    }
}
