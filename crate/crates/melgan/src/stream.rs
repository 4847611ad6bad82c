//! Streaming execution: one frame in, frame_step samples out.
//!
//! Plain convolutions remember their last (ks − 1) · dilation input steps,
//! seeded with zeros to mirror the batch path's causal padding. Transposed
//! convolutions keep the ks − stride pending output samples that reach past
//! the current stride block. With those two buffers the concatenated
//! streaming output equals the batch forward pass on the same frames.

use std::sync::Arc;

use crate::error::MelganError;
use crate::generator::Generator;
use crate::layers::{elu_rows, ConvWeights, TconvWeights};

struct ConvState {
    hist: Vec<Vec<f32>>,
}

impl ConvState {
    fn new(w: &ConvWeights) -> Self {
        ConvState { hist: vec![vec![0.0f32; w.history_len()]; w.ch_in] }
    }

    fn reset(&mut self) {
        for row in &mut self.hist {
            row.iter_mut().for_each(|v| *v = 0.0);
        }
    }

    fn bytes(&self) -> usize {
        self.hist.iter().map(|r| r.len() * 4).sum()
    }

    fn push(&mut self, w: &ConvWeights, input: &[Vec<f32>]) -> Vec<Vec<f32>> {
        let n = input.first().map_or(0, Vec::len);
        let hist_len = w.history_len();
        let ext: Vec<Vec<f32>> = self
            .hist
            .iter()
            .zip(input)
            .map(|(h, row)| {
                let mut ext = Vec::with_capacity(hist_len + n);
                ext.extend_from_slice(h);
                ext.extend_from_slice(row);
                ext
            })
            .collect();
        for (h, row) in self.hist.iter_mut().zip(&ext) {
            h.copy_from_slice(&row[row.len() - hist_len..]);
        }
        w.correlate(&ext, n)
    }
}

struct TconvState {
    tail: Vec<Vec<f32>>,
}

impl TconvState {
    fn new(w: &TconvWeights) -> Self {
        TconvState { tail: vec![vec![0.0f32; w.tail_len()]; w.ch_out] }
    }

    fn reset(&mut self) {
        for row in &mut self.tail {
            row.iter_mut().for_each(|v| *v = 0.0);
        }
    }

    fn bytes(&self) -> usize {
        self.tail.iter().map(|r| r.len() * 4).sum()
    }

    fn push(&mut self, w: &TconvWeights, input: &[Vec<f32>]) -> Vec<Vec<f32>> {
        let n = input.first().map_or(0, Vec::len);
        let tail_len = w.tail_len();
        let mut out = vec![vec![0.0f32; n * w.stride]; w.ch_out];
        let mut full = vec![0.0f32; w.ks.max(w.stride)];
        for t in 0..n {
            for co in 0..w.ch_out {
                full.iter_mut().for_each(|v| *v = 0.0);
                full[..tail_len].copy_from_slice(&self.tail[co]);
                let kco = &w.kernel[co * w.ch_in * w.ks..(co + 1) * w.ch_in * w.ks];
                for ci in 0..w.ch_in {
                    let v = input[ci][t];
                    let krow = &kco[ci * w.ks..ci * w.ks + w.ks];
                    for (k, &kw) in krow.iter().enumerate() {
                        full[k] += v * kw;
                    }
                }
                for j in 0..w.stride {
                    out[co][t * w.stride + j] = full[j] + w.bias[co];
                }
                self.tail[co].copy_from_slice(&full[w.stride..w.stride + tail_len]);
            }
        }
        out
    }
}

struct ResState {
    dil: ConvState,
    pt: ConvState,
}

struct UpState {
    tconv: TconvState,
    res: Vec<ResState>,
}

/// Push-driven generator execution over a shared immutable [`Generator`].
///
/// The push interface takes only a frame; there is no lookahead knob, the
/// graph is causal end to end.
pub struct GeneratorStream {
    gen: Arc<Generator>,
    in_conv: ConvState,
    ups: Vec<UpState>,
    out_conv: ConvState,
}

impl GeneratorStream {
    pub fn new(gen: Arc<Generator>) -> Self {
        let in_conv = ConvState::new(&gen.in_conv);
        let ups = gen
            .ups
            .iter()
            .map(|up| UpState {
                tconv: TconvState::new(&up.tconv),
                res: up
                    .res
                    .iter()
                    .map(|r| ResState { dil: ConvState::new(&r.dil), pt: ConvState::new(&r.pt) })
                    .collect(),
            })
            .collect();
        let out_conv = ConvState::new(&gen.out_conv);
        GeneratorStream { gen, in_conv, ups, out_conv }
    }

    pub fn generator(&self) -> &Arc<Generator> {
        &self.gen
    }

    /// Clears all history and pending-output buffers.
    pub fn reset(&mut self) {
        self.in_conv.reset();
        for up in &mut self.ups {
            up.tconv.reset();
            for r in &mut up.res {
                r.dil.reset();
                r.pt.reset();
            }
        }
        self.out_conv.reset();
    }

    /// Bytes held in streaming state buffers.
    pub fn state_bytes(&self) -> usize {
        let mut total = self.in_conv.bytes() + self.out_conv.bytes();
        for up in &self.ups {
            total += up.tconv.bytes();
            for r in &up.res {
                total += r.dil.bytes() + r.pt.bytes();
            }
        }
        total
    }

    /// Feeds one log-magnitude frame and returns exactly frame_step samples.
    pub fn push(&mut self, frame: &[f32]) -> Result<Vec<f32>, MelganError> {
        let arch = self.gen.arch();
        if frame.len() != arch.num_bins {
            return Err(MelganError::FrameWidth { expected: arch.num_bins, got: frame.len() });
        }
        let mut x: Vec<Vec<f32>> = frame.iter().map(|&v| vec![v]).collect();
        x = self.in_conv.push(&self.gen.in_conv, &x);
        for (up_w, up_s) in self.gen.ups.iter().zip(&mut self.ups) {
            x = elu_rows(&x);
            x = up_s.tconv.push(&up_w.tconv, &x);
            for (r_w, r_s) in up_w.res.iter().zip(&mut up_s.res) {
                let inner = r_s.pt.push(&r_w.pt, &r_s.dil.push(&r_w.dil, &elu_rows(&x)));
                for (row, add) in x.iter_mut().zip(&inner) {
                    for (v, &a) in row.iter_mut().zip(add) {
                        *v += a;
                    }
                }
            }
        }
        x = elu_rows(&x);
        x = self.out_conv.push(&self.gen.out_conv, &x);
        Ok(x.into_iter().next().unwrap_or_default())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arch::GeneratorArch;
    use crate::testutil::{mini_arch, random_frames, spec_from_frames};
    use crate::weights::random_weights;

    fn max_abs_diff(a: &[f32], b: &[f32]) -> f32 {
        assert_eq!(a.len(), b.len());
        a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f32::max)
    }

    #[test]
    fn streaming_concatenation_matches_batch_on_the_mini_arch() {
        let arch = mini_arch();
        for seed in 0..5u64 {
            let gen = Arc::new(Generator::new(arch.clone(), &random_weights(&arch, seed)).unwrap());
            let frames = random_frames(100 + seed, arch.num_bins, 9);
            let batch = gen.forward_batch(&spec_from_frames(frames.clone(), arch.frame_step)).unwrap();
            let mut stream = GeneratorStream::new(gen);
            let mut got = Vec::new();
            for frame in &frames {
                let chunk = stream.push(frame).unwrap();
                assert_eq!(chunk.len(), arch.frame_step);
                got.extend(chunk);
            }
            assert!(max_abs_diff(&got, &batch) < 1e-5, "seed {seed}");
        }
    }

    #[test]
    fn streaming_matches_batch_on_the_full_size_arch() {
        let arch = GeneratorArch::default();
        let gen = Arc::new(Generator::new(arch.clone(), &random_weights(&arch, 42)).unwrap());
        let frames = random_frames(43, 1025, 6);
        let batch = gen.forward_batch(&spec_from_frames(frames.clone(), 200)).unwrap();
        let mut stream = GeneratorStream::new(gen);
        let mut got = Vec::new();
        for frame in &frames {
            got.extend(stream.push(frame).unwrap());
        }
        assert_eq!(got.len(), 1200);
        assert!(max_abs_diff(&got, &batch) < 1e-5);
    }

    #[test]
    fn first_push_of_a_zero_frame_equals_batch_on_one_zero_frame() {
        let arch = mini_arch();
        let gen = Arc::new(Generator::new(arch.clone(), &random_weights(&arch, 2)).unwrap());
        let zero = vec![0.0f32; arch.num_bins];
        let batch = gen.forward_batch(&spec_from_frames(vec![zero.clone()], arch.frame_step)).unwrap();
        let mut stream = GeneratorStream::new(gen);
        let got = stream.push(&zero).unwrap();
        assert_eq!(got, batch);
    }

    #[test]
    fn reset_replays_identically() {
        let arch = mini_arch();
        let gen = Arc::new(Generator::new(arch.clone(), &random_weights(&arch, 6)).unwrap());
        let frames = random_frames(7, arch.num_bins, 5);
        let mut stream = GeneratorStream::new(gen);
        let first: Vec<Vec<f32>> =
            frames.iter().map(|f| stream.push(f).unwrap()).collect();
        stream.reset();
        let second: Vec<Vec<f32>> =
            frames.iter().map(|f| stream.push(f).unwrap()).collect();
        assert_eq!(first, second);
    }

    #[test]
    fn wrong_width_frame_is_rejected() {
        let arch = mini_arch();
        let gen = Arc::new(Generator::new(arch.clone(), &random_weights(&arch, 6)).unwrap());
        let mut stream = GeneratorStream::new(gen);
        assert!(matches!(
            stream.push(&vec![0.0; 3]),
            Err(MelganError::FrameWidth { expected: 5, got: 3 })
        ));
    }

    #[test]
    fn state_bytes_matches_the_hand_counted_buffer_sizes() {
        let arch = mini_arch();
        let gen = Arc::new(Generator::new(arch.clone(), &random_weights(&arch, 6)).unwrap());
        let stream = GeneratorStream::new(gen);
        let res_hist = 2 + 6 + 18;
        let floats = 5 * 2
            + (6 * 2 + 6 * res_hist)
            + (4 * 0 + 4 * res_hist)
            + (3 * 2 + 3 * res_hist)
            + 3 * 2;
        assert_eq!(stream.state_bytes(), floats * 4);
    }

    #[test]
    fn causality_probe_holds_at_every_stage_boundary() {
        let arch = mini_arch();
        let gen = Generator::new(arch.clone(), &random_weights(&arch, 21)).unwrap();
        let frames = random_frames(22, arch.num_bins, 6);
        let spec = spec_from_frames(frames.clone(), arch.frame_step);
        let (base_out, base_taps) = gen.forward_batch_traced(&spec).unwrap();
        for zeroed in [2usize, 5] {
            let mut perturbed = frames.clone();
            perturbed[zeroed].iter_mut().for_each(|v| *v = 0.0);
            let (out, taps) = gen
                .forward_batch_traced(&spec_from_frames(perturbed, arch.frame_step))
                .unwrap();
            for (a, b) in base_taps.iter().zip(&taps) {
                assert_eq!(a.name, b.name);
                let boundary = a.upsample * zeroed;
                for (row_a, row_b) in a.rows.iter().zip(&b.rows) {
                    assert_eq!(&row_a[..boundary], &row_b[..boundary], "tap {}", a.name);
                }
            }
            let boundary = arch.frame_step * zeroed;
            assert_eq!(&base_out[..boundary], &out[..boundary]);
            assert!(
                base_out[boundary..].iter().zip(&out[boundary..]).any(|(a, b)| a != b),
                "perturbation of frame {zeroed} should reach the output"
            );
        }
    }
}
