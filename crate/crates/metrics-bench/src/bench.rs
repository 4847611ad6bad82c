//! Per-hop latency, delay, and real-time-factor measurement.

use std::time::Instant;

use serde::Serialize;
use specpipe::LogMagSpectrogram;

use crate::error::MetricsError;
use crate::vocoder::StreamingVocoder;

/// One benchmark run. Delay and memory fields are pure functions of the
/// vocoder configuration; the latency and real-time-factor fields come from
/// a single-threaded wall-clock measurement on the host.
#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub vocoder: String,
    pub sample_rate: u32,
    pub frame_step: usize,
    pub hops_measured: usize,
    pub warmup_hops: usize,
    pub lookahead_delay_ms: f64,
    pub total_delay_ms: f64,
    pub mean_latency_ms: f64,
    pub median_latency_ms: f64,
    pub p95_latency_ms: f64,
    pub rtf: f64,
    pub state_bytes: usize,
    pub total_wall_ms: f64,
}

impl BenchReport {
    /// Line-oriented key=value rendering, keys in declaration order.
    pub fn to_kv_text(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("vocoder={}\n", self.vocoder));
        s.push_str(&format!("sample_rate={}\n", self.sample_rate));
        s.push_str(&format!("frame_step={}\n", self.frame_step));
        s.push_str(&format!("hops_measured={}\n", self.hops_measured));
        s.push_str(&format!("warmup_hops={}\n", self.warmup_hops));
        s.push_str(&format!("lookahead_delay_ms={}\n", self.lookahead_delay_ms));
        s.push_str(&format!("total_delay_ms={}\n", self.total_delay_ms));
        s.push_str(&format!("mean_latency_ms={:.6}\n", self.mean_latency_ms));
        s.push_str(&format!("median_latency_ms={:.6}\n", self.median_latency_ms));
        s.push_str(&format!("p95_latency_ms={:.6}\n", self.p95_latency_ms));
        s.push_str(&format!("rtf={:.3}\n", self.rtf));
        s.push_str(&format!("state_bytes={}\n", self.state_bytes));
        s.push_str(&format!("total_wall_ms={:.6}\n", self.total_wall_ms));
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn percentile(sorted: &[f64], p: f64) -> f64 {
    let idx = ((sorted.len() as f64 * p).ceil() as usize).clamp(1, sorted.len()) - 1;
    sorted[idx]
}

fn median(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

/// Pushes every frame of the spectrogram through the vocoder, timing each
/// push after the warmup hops, and derives latency statistics and the
/// real-time factor from the measured span. The flush is excluded from the
/// per-hop statistics.
pub fn run_bench(
    vocoder: &mut dyn StreamingVocoder,
    spec: &LogMagSpectrogram,
    warmup_hops: usize,
) -> Result<BenchReport, MetricsError> {
    if spec.num_frames() == 0 {
        return Err(MetricsError::EmptySpectrogram);
    }
    if spec.num_frames() <= warmup_hops {
        return Err(MetricsError::NoMeasuredHops {
            frames: spec.num_frames(),
            warmup: warmup_hops,
        });
    }
    for frame in &spec.frames[..warmup_hops] {
        vocoder.push_frame(frame)?;
    }
    let mut latencies_ms = Vec::with_capacity(spec.num_frames() - warmup_hops);
    let span_start = Instant::now();
    for frame in &spec.frames[warmup_hops..] {
        let start = Instant::now();
        vocoder.push_frame(frame)?;
        latencies_ms.push(start.elapsed().as_secs_f64() * 1e3);
    }
    let total_wall_ms = span_start.elapsed().as_secs_f64() * 1e3;
    vocoder.flush()?;

    let hops = latencies_ms.len();
    let mean = latencies_ms.iter().sum::<f64>() / hops as f64;
    let mut sorted = latencies_ms;
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let rate = vocoder.sample_rate() as f64;
    let per_sample_ms = 1e3 / rate;
    let audio_ms = (hops * vocoder.frame_step()) as f64 * per_sample_ms;
    Ok(BenchReport {
        vocoder: vocoder.name().to_owned(),
        sample_rate: vocoder.sample_rate(),
        frame_step: vocoder.frame_step(),
        hops_measured: hops,
        warmup_hops,
        lookahead_delay_ms: vocoder.lookahead_delay_samples() as f64 * per_sample_ms,
        total_delay_ms: vocoder.total_delay_samples() as f64 * per_sample_ms,
        mean_latency_ms: mean,
        median_latency_ms: median(&sorted),
        p95_latency_ms: percentile(&sorted, 0.95),
        rtf: audio_ms / total_wall_ms,
        state_bytes: vocoder.state_bytes(),
        total_wall_ms,
    })
}
