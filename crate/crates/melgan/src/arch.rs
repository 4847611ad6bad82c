//! Generator architecture description and closed-form parameter counting.

use crate::error::MelganError;

/// Dilations of the three residual blocks inside every upscale stage.
pub const RESBLOCK_DILATIONS: [usize; 3] = [1, 3, 9];

/// One upscale stage: ELU, a strided transposed convolution, then three
/// dilated residual blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpscaleSpec {
    pub ch_in: usize,
    pub ch_out: usize,
    pub ks: usize,
    pub stride: usize,
}

/// Full generator topology: an input convolution over the spectrogram bins,
/// a chain of upscale stages whose strides multiply to one frame step, and a
/// single-channel output convolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorArch {
    /// Input channel count, one per spectrogram bin.
    pub num_bins: usize,
    /// Samples emitted per input frame; the stride product must equal this.
    pub frame_step: usize,
    pub in_channels: usize,
    pub in_kernel: usize,
    pub upscales: Vec<UpscaleSpec>,
    pub out_kernel: usize,
}

impl Default for GeneratorArch {
    fn default() -> Self {
        GeneratorArch {
            num_bins: 1025,
            frame_step: 200,
            in_channels: 512,
            in_kernel: 7,
            upscales: vec![
                UpscaleSpec { ch_in: 512, ch_out: 256, ks: 10, stride: 5 },
                UpscaleSpec { ch_in: 256, ch_out: 128, ks: 10, stride: 5 },
                UpscaleSpec { ch_in: 128, ch_out: 64, ks: 8, stride: 4 },
                UpscaleSpec { ch_in: 64, ch_out: 32, ks: 4, stride: 2 },
            ],
            out_kernel: 7,
        }
    }
}

impl GeneratorArch {
    /// Product of the upscale strides: output samples per input frame.
    pub fn upsampling_factor(&self) -> usize {
        self.upscales.iter().map(|u| u.stride).product()
    }

    pub fn validate(&self) -> Result<(), MelganError> {
        if self.num_bins == 0
            || self.frame_step == 0
            || self.in_channels == 0
            || self.in_kernel == 0
            || self.out_kernel == 0
        {
            return Err(MelganError::InvalidArch("zero-sized dimension".into()));
        }
        let mut prev_out = self.in_channels;
        for (i, up) in self.upscales.iter().enumerate() {
            if up.ch_in == 0 || up.ch_out == 0 || up.ks == 0 || up.stride == 0 {
                return Err(MelganError::InvalidArch(format!(
                    "zero-sized dimension in upscale stage {i}"
                )));
            }
            if up.ch_in != prev_out {
                return Err(MelganError::ChannelChain {
                    index: i + 1,
                    expected: up.ch_in,
                    got: prev_out,
                });
            }
            prev_out = up.ch_out;
        }
        let product = self.upsampling_factor();
        if product != self.frame_step {
            return Err(MelganError::Upsampling { product, frame_step: self.frame_step });
        }
        Ok(())
    }

    /// Output channels of the last upscale stage, feeding the output conv.
    pub fn last_channels(&self) -> usize {
        self.upscales.last().map_or(self.in_channels, |u| u.ch_out)
    }

    /// Total trainable parameters: for every convolution
    /// ch_in · ch_out · ks weights plus ch_out biases.
    pub fn param_count(&self) -> usize {
        let conv = |ci: usize, co: usize, ks: usize| ci * co * ks + co;
        let mut total = conv(self.num_bins, self.in_channels, self.in_kernel);
        for up in &self.upscales {
            total += conv(up.ch_in, up.ch_out, up.ks);
            for _ in RESBLOCK_DILATIONS {
                total += conv(up.ch_out, up.ch_out, 3);
                total += conv(up.ch_out, up.ch_out, 1);
            }
        }
        total += conv(self.last_channels(), 1, self.out_kernel);
        total
    }

    /// Canonical tensor names and shapes, in the order they are stored.
    /// Kernels are shaped [ch_out, ch_in, ks]; biases [ch_out].
    pub fn tensor_shapes(&self) -> Vec<(String, Vec<usize>)> {
        let mut out = Vec::new();
        let mut conv = |prefix: &str, ci: usize, co: usize, ks: usize| {
            out.push((format!("{prefix}.kernel"), vec![co, ci, ks]));
            out.push((format!("{prefix}.bias"), vec![co]));
        };
        conv("in_conv", self.num_bins, self.in_channels, self.in_kernel);
        for (i, up) in self.upscales.iter().enumerate() {
            conv(&format!("up{i}.tconv"), up.ch_in, up.ch_out, up.ks);
            for j in 1..=RESBLOCK_DILATIONS.len() {
                conv(&format!("up{i}.res{j}.conv_dil"), up.ch_out, up.ch_out, 3);
                conv(&format!("up{i}.res{j}.conv_pt"), up.ch_out, up.ch_out, 1);
            }
        }
        conv("out_conv", self.last_channels(), 1, self.out_kernel);
        out
    }
}
