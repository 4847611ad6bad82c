//! Batch convolution primitives over channel-major activations.
//!
//! Activations are `Vec<Vec<f32>>` with one row per channel. Plain
//! convolutions are causal: the input is left-padded with
//! (ks − 1) · dilation zeros so output t reads inputs at times ≤ t only.
//! Transposed convolutions scatter each input step over ks output samples
//! starting at t · stride, which is likewise causal at the upsampled rate.

pub(crate) fn elu(x: f32) -> f32 {
    if x > 0.0 {
        x
    } else {
        x.exp() - 1.0
    }
}

pub(crate) fn elu_rows(rows: &[Vec<f32>]) -> Vec<Vec<f32>> {
    rows.iter().map(|row| row.iter().map(|&v| elu(v)).collect()).collect()
}

/// Kernel flattened as [ch_out, ch_in, ks].
#[derive(Debug, Clone)]
pub(crate) struct ConvWeights {
    pub ch_in: usize,
    pub ch_out: usize,
    pub ks: usize,
    pub dilation: usize,
    pub kernel: Vec<f32>,
    pub bias: Vec<f32>,
}

impl ConvWeights {
    /// Input steps that must be remembered between streaming pushes.
    pub fn history_len(&self) -> usize {
        (self.ks - 1) * self.dilation
    }

    /// Correlates extended rows (history or padding followed by the fresh
    /// input) down to out_len samples per output channel.
    pub fn correlate(&self, ext: &[Vec<f32>], out_len: usize) -> Vec<Vec<f32>> {
        let mut out = vec![vec![0.0f32; out_len]; self.ch_out];
        for co in 0..self.ch_out {
            let kco = &self.kernel[co * self.ch_in * self.ks..(co + 1) * self.ch_in * self.ks];
            let row_out = &mut out[co];
            for t in 0..out_len {
                let mut acc = 0.0f32;
                for ci in 0..self.ch_in {
                    let krow = &kco[ci * self.ks..ci * self.ks + self.ks];
                    let row_in = &ext[ci];
                    for (k, &w) in krow.iter().enumerate() {
                        acc += row_in[t + k * self.dilation] * w;
                    }
                }
                row_out[t] = acc + self.bias[co];
            }
        }
        out
    }

    pub fn forward_batch(&self, input: &[Vec<f32>]) -> Vec<Vec<f32>> {
        let len = input.first().map_or(0, Vec::len);
        let pad = self.history_len();
        let ext: Vec<Vec<f32>> = input
            .iter()
            .map(|row| {
                let mut padded = vec![0.0f32; pad + len];
                padded[pad..].copy_from_slice(row);
                padded
            })
            .collect();
        self.correlate(&ext, len)
    }
}

/// Kernel flattened as [ch_out, ch_in, ks]; input step t contributes to
/// output samples t · stride .. t · stride + ks.
#[derive(Debug, Clone)]
pub(crate) struct TconvWeights {
    pub ch_in: usize,
    pub ch_out: usize,
    pub ks: usize,
    pub stride: usize,
    pub kernel: Vec<f32>,
    pub bias: Vec<f32>,
}

impl TconvWeights {
    /// Output samples that stay pending after each streaming step.
    pub fn tail_len(&self) -> usize {
        self.ks.saturating_sub(self.stride)
    }

    pub fn forward_batch(&self, input: &[Vec<f32>]) -> Vec<Vec<f32>> {
        let len = input.first().map_or(0, Vec::len);
        let out_len = len * self.stride;
        let mut out = vec![vec![0.0f32; out_len + self.tail_len()]; self.ch_out];
        for t in 0..len {
            for co in 0..self.ch_out {
                let kco = &self.kernel[co * self.ch_in * self.ks..(co + 1) * self.ch_in * self.ks];
                let row_out = &mut out[co];
                for ci in 0..self.ch_in {
                    let v = input[ci][t];
                    let krow = &kco[ci * self.ks..ci * self.ks + self.ks];
                    for (k, &w) in krow.iter().enumerate() {
                        row_out[t * self.stride + k] += v * w;
                    }
                }
            }
        }
        for (co, row) in out.iter_mut().enumerate() {
            row.truncate(out_len);
            for v in row.iter_mut() {
                *v += self.bias[co];
            }
        }
        out
    }
}
