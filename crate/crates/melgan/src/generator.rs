//! Weight binding and the batch forward pass.

use std::collections::BTreeSet;

use specpipe::LogMagSpectrogram;

use crate::arch::{GeneratorArch, RESBLOCK_DILATIONS};
use crate::error::MelganError;
use crate::layers::{elu_rows, ConvWeights, TconvWeights};
use crate::weights::WeightSet;

pub(crate) struct ResLayer {
    pub dil: ConvWeights,
    pub pt: ConvWeights,
}

pub(crate) struct UpLayer {
    pub tconv: TconvWeights,
    pub res: Vec<ResLayer>,
}

/// Activations captured at one stage boundary of a traced forward pass.
pub struct LayerTap {
    pub name: String,
    /// Output samples per input frame at this boundary.
    pub upsample: usize,
    pub rows: Vec<Vec<f32>>,
}

/// An executable generator: a validated architecture bound to weights.
///
/// The generator consumes log-compressed magnitude frames directly and
/// emits raw waveform samples, frame_step per frame. It is immutable after
/// construction and shareable across threads.
pub struct Generator {
    arch: GeneratorArch,
    pub(crate) in_conv: ConvWeights,
    pub(crate) ups: Vec<UpLayer>,
    pub(crate) out_conv: ConvWeights,
}

fn bind_conv(
    set: &WeightSet,
    prefix: &str,
    ch_in: usize,
    ch_out: usize,
    ks: usize,
    dilation: usize,
) -> Result<ConvWeights, MelganError> {
    let kernel = bind_tensor(set, &format!("{prefix}.kernel"), &[ch_out, ch_in, ks])?;
    let bias = bind_tensor(set, &format!("{prefix}.bias"), &[ch_out])?;
    Ok(ConvWeights { ch_in, ch_out, ks, dilation, kernel, bias })
}

fn bind_tensor(set: &WeightSet, name: &str, expected: &[usize]) -> Result<Vec<f32>, MelganError> {
    let tensor = set.get(name).ok_or_else(|| MelganError::MissingTensor(name.to_owned()))?;
    if tensor.dims != expected {
        return Err(MelganError::ShapeMismatch {
            name: name.to_owned(),
            expected: expected.to_vec(),
            got: tensor.dims.clone(),
        });
    }
    Ok(tensor.data.clone())
}

impl Generator {
    pub fn new(arch: GeneratorArch, weights: &WeightSet) -> Result<Self, MelganError> {
        arch.validate()?;
        let expected: BTreeSet<String> =
            arch.tensor_shapes().into_iter().map(|(name, _)| name).collect();
        for name in weights.names() {
            if !expected.contains(name) {
                return Err(MelganError::UnknownTensor(name.to_owned()));
            }
        }
        let in_conv = bind_conv(weights, "in_conv", arch.num_bins, arch.in_channels, arch.in_kernel, 1)?;
        let mut ups = Vec::with_capacity(arch.upscales.len());
        for (i, up) in arch.upscales.iter().enumerate() {
            let kernel = bind_tensor(
                weights,
                &format!("up{i}.tconv.kernel"),
                &[up.ch_out, up.ch_in, up.ks],
            )?;
            let bias = bind_tensor(weights, &format!("up{i}.tconv.bias"), &[up.ch_out])?;
            let tconv = TconvWeights {
                ch_in: up.ch_in,
                ch_out: up.ch_out,
                ks: up.ks,
                stride: up.stride,
                kernel,
                bias,
            };
            let mut res = Vec::with_capacity(RESBLOCK_DILATIONS.len());
            for (j, &dilation) in RESBLOCK_DILATIONS.iter().enumerate() {
                let dil = bind_conv(
                    weights,
                    &format!("up{i}.res{}.conv_dil", j + 1),
                    up.ch_out,
                    up.ch_out,
                    3,
                    dilation,
                )?;
                let pt = bind_conv(
                    weights,
                    &format!("up{i}.res{}.conv_pt", j + 1),
                    up.ch_out,
                    up.ch_out,
                    1,
                    1,
                )?;
                res.push(ResLayer { dil, pt });
            }
            ups.push(UpLayer { tconv, res });
        }
        let out_conv = bind_conv(weights, "out_conv", arch.last_channels(), 1, arch.out_kernel, 1)?;
        Ok(Generator { arch, in_conv, ups, out_conv })
    }

    pub fn arch(&self) -> &GeneratorArch {
        &self.arch
    }

    pub fn param_count(&self) -> usize {
        self.arch.param_count()
    }

    pub(crate) fn check_frames(&self, spec: &LogMagSpectrogram) -> Result<(), MelganError> {
        for frame in &spec.frames {
            if frame.len() != self.arch.num_bins {
                return Err(MelganError::FrameWidth {
                    expected: self.arch.num_bins,
                    got: frame.len(),
                });
            }
        }
        Ok(())
    }

    /// Runs the whole spectrogram through the generator, capturing the
    /// activations at every stage boundary.
    pub fn forward_batch_traced(
        &self,
        spec: &LogMagSpectrogram,
    ) -> Result<(Vec<f32>, Vec<LayerTap>), MelganError> {
        self.check_frames(spec)?;
        let len = spec.num_frames();
        let mut x: Vec<Vec<f32>> = (0..self.arch.num_bins)
            .map(|ci| (0..len).map(|t| spec.frames[t][ci]).collect())
            .collect();
        let mut taps = Vec::new();
        let mut factor = 1usize;
        x = self.in_conv.forward_batch(&x);
        taps.push(LayerTap { name: "in_conv".into(), upsample: factor, rows: x.clone() });
        for (i, up) in self.ups.iter().enumerate() {
            x = elu_rows(&x);
            x = up.tconv.forward_batch(&x);
            factor *= up.tconv.stride;
            for r in &up.res {
                let inner = r.pt.forward_batch(&r.dil.forward_batch(&elu_rows(&x)));
                for (row, add) in x.iter_mut().zip(&inner) {
                    for (v, &a) in row.iter_mut().zip(add) {
                        *v += a;
                    }
                }
            }
            taps.push(LayerTap { name: format!("up{i}"), upsample: factor, rows: x.clone() });
        }
        x = elu_rows(&x);
        x = self.out_conv.forward_batch(&x);
        taps.push(LayerTap { name: "out_conv".into(), upsample: factor, rows: x.clone() });
        let samples = x.into_iter().next().unwrap_or_default();
        Ok((samples, taps))
    }

    /// N input frames in, exactly frame_step · N samples out.
    pub fn forward_batch(&self, spec: &LogMagSpectrogram) -> Result<Vec<f32>, MelganError> {
        self.check_frames(spec)?;
        let len = spec.num_frames();
        let mut x: Vec<Vec<f32>> = (0..self.arch.num_bins)
            .map(|ci| (0..len).map(|t| spec.frames[t][ci]).collect())
            .collect();
        x = self.in_conv.forward_batch(&x);
        for up in &self.ups {
            x = elu_rows(&x);
            x = up.tconv.forward_batch(&x);
            for r in &up.res {
                let inner = r.pt.forward_batch(&r.dil.forward_batch(&elu_rows(&x)));
                for (row, add) in x.iter_mut().zip(&inner) {
                    for (v, &a) in row.iter_mut().zip(add) {
                        *v += a;
                    }
                }
            }
        }
        x = elu_rows(&x);
        x = self.out_conv.forward_batch(&x);
        Ok(x.into_iter().next().unwrap_or_default())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{mini_arch, random_frames, spec_from_frames};
    use crate::weights::{random_weights, Tensor};

    #[test]
    fn output_length_is_frame_step_times_frames() {
        let arch = mini_arch();
        let gen = Generator::new(arch.clone(), &random_weights(&arch, 3)).unwrap();
        for count in [0usize, 1, 3, 7] {
            let spec = spec_from_frames(random_frames(count as u64, 5, count), 12);
            let out = gen.forward_batch(&spec).unwrap();
            assert_eq!(out.len(), 12 * count);
        }
    }

    #[test]
    fn default_arch_emits_two_hundred_samples_per_frame() {
        let arch = GeneratorArch::default();
        let gen = Generator::new(arch.clone(), &random_weights(&arch, 1)).unwrap();
        for count in [1usize, 3] {
            let spec = spec_from_frames(random_frames(9, 1025, count), 200);
            let out = gen.forward_batch(&spec).unwrap();
            assert_eq!(out.len(), 200 * count);
        }
    }

    #[test]
    fn wrong_frame_width_is_rejected() {
        let arch = mini_arch();
        let gen = Generator::new(arch.clone(), &random_weights(&arch, 3)).unwrap();
        let spec = spec_from_frames(vec![vec![0.0; 4]], 12);
        assert!(matches!(
            gen.forward_batch(&spec),
            Err(MelganError::FrameWidth { expected: 5, got: 4 })
        ));
    }

    #[test]
    fn missing_and_misshapen_tensors_are_named() {
        let arch = mini_arch();
        let mut w = random_weights(&arch, 4);
        let taken = w.get("up1.res2.conv_pt.bias").unwrap().clone();
        let mut without = WeightSet::new();
        for name in w.names().filter(|n| *n != "up1.res2.conv_pt.bias") {
            without.insert(name.to_owned(), w.get(name).unwrap().clone());
        }
        match Generator::new(arch.clone(), &without) {
            Err(MelganError::MissingTensor(name)) => assert_eq!(name, "up1.res2.conv_pt.bias"),
            other => panic!("expected missing tensor, got ok={}", other.is_ok()),
        }

        let t = w.get("in_conv.kernel").unwrap().clone();
        let transposed = Tensor::new(
            vec![t.dims[1], t.dims[0], t.dims[2]],
            t.data.clone(),
        );
        w.insert("in_conv.kernel", transposed);
        match Generator::new(arch.clone(), &w) {
            Err(MelganError::ShapeMismatch { name, expected, got }) => {
                assert_eq!(name, "in_conv.kernel");
                assert_eq!(expected, vec![8, 5, 3]);
                assert_eq!(got, vec![5, 8, 3]);
            }
            other => panic!("expected shape mismatch, got ok={}", other.is_ok()),
        }

        let mut extra = random_weights(&arch, 4);
        extra.insert("up9.tconv.bias", taken);
        match Generator::new(arch, &extra) {
            Err(MelganError::UnknownTensor(name)) => assert_eq!(name, "up9.tconv.bias"),
            other => panic!("expected unknown tensor, got ok={}", other.is_ok()),
        }
    }

    #[test]
    fn zero_kernels_reduce_to_a_hand_computed_bias_chain() {
        let arch = GeneratorArch::default();
        let mut w = WeightSet::new();
        for (name, dims) in arch.tensor_shapes() {
            let n: usize = dims.iter().product();
            let fill = if name.ends_with(".bias") { 0.3f32 } else { 0.0 };
            w.insert(name, Tensor::new(dims, vec![fill; n]));
        }
        let out_weight = 0.01f32;
        let kdims = vec![1usize, 32, 7];
        w.insert("out_conv.kernel", Tensor::new(kdims.clone(), vec![out_weight; 32 * 7]));
        w.insert("out_conv.bias", Tensor::new(vec![1], vec![0.05f32]));
        for (name, value) in [
            ("up3.tconv.bias", -0.1f32),
            ("up3.res1.conv_pt.bias", -0.1),
            ("up3.res2.conv_pt.bias", -0.1),
            ("up3.res3.conv_pt.bias", -0.1),
        ] {
            w.insert(name, Tensor::new(vec![32], vec![value; 32]));
        }
        let gen = Generator::new(arch, &w).unwrap();
        let spec = spec_from_frames(random_frames(5, 1025, 3), 200);
        let out = gen.forward_batch(&spec).unwrap();
        assert_eq!(out.len(), 600);
        let c = (-0.4f32).exp() - 1.0;
        for (t, &v) in out.iter().enumerate() {
            let taps = (t + 1).min(7);
            let want = 0.05f32 + out_weight * 32.0 * taps as f32 * c;
            assert!(
                (v - want).abs() < 2e-5,
                "sample {t}: {v} vs {want}"
            );
        }
    }
}
