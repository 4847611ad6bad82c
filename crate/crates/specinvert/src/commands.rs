//! The operations behind each CLI subcommand, exposed as plain functions.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use dsp_core::StreamConfig;
use griffin_lim::{gl_nonstreaming, GlConfig, GlStream};
use melgan::{load_weights, random_weights, save_weights, Generator, GeneratorArch, GeneratorStream};
use metrics_bench::{
    align_by_shift, magnitude_frames, run_bench, snr, spectral_convergence, BenchReport,
    GlVocoder, MelganVocoder, NullVocoder, StreamingVocoder,
};
use specpipe::{analyze, load_spectrogram, save_spectrogram, LogMagSpectrogram};
use thiserror::Error;

use crate::wav::{wav_read_expecting, wav_write, WavClip, WavError};

/// Environment variable holding the seed for generating random weights when
/// a requested .gwt file does not exist yet.
pub const SEED_ENV: &str = "SPECINVERT_SEED";

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Wav(#[from] WavError),
    #[error(transparent)]
    Spec(#[from] specpipe::SpecError),
    #[error(transparent)]
    Gl(#[from] griffin_lim::GlError),
    #[error(transparent)]
    Melgan(#[from] melgan::MelganError),
    #[error(transparent)]
    Metrics(#[from] metrics_bench::MetricsError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("the melgan vocoder needs --weights")]
    MelganNeedsWeights,
    #[error("weights file {0} not found; set {SEED_ENV} to generate seeded random weights there")]
    WeightsUnavailable(PathBuf),
    #[error("spectrogram frame step {got} does not match the generator's {expected}")]
    StepMismatch { expected: usize, got: usize },
}

/// Analysis-side settings shared by the commands that frame audio.
#[derive(Debug, Clone)]
pub struct AnalysisOpts {
    pub sample_rate: u32,
    pub fft_size: usize,
    pub frame_size: usize,
    pub frame_step: usize,
    pub preemph: f64,
    pub log_delta: f64,
}

impl Default for AnalysisOpts {
    fn default() -> Self {
        let cfg = StreamConfig::default();
        AnalysisOpts {
            sample_rate: cfg.sample_rate,
            fft_size: cfg.fft_size,
            frame_size: cfg.frame_size,
            frame_step: cfg.frame_step,
            preemph: cfg.preemph_coef,
            log_delta: cfg.log_delta,
        }
    }
}

impl AnalysisOpts {
    pub fn stream_config(&self) -> StreamConfig {
        StreamConfig {
            sample_rate: self.sample_rate,
            fft_size: self.fft_size,
            frame_size: self.frame_size,
            frame_step: self.frame_step,
            preemph_coef: self.preemph,
            log_delta: self.log_delta,
        }
    }
}

/// Which engine turns a spectrogram back into audio.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvertVocoder {
    Ngl,
    Sgl,
    Melgan,
}

/// Engines the streaming benchmark can drive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchVocoder {
    Sgl,
    Melgan,
    Null,
}

#[derive(Debug, Clone)]
pub struct InvertOpts {
    /// Iteration count; defaults to 70 for ngl and 4 per hop for sgl.
    pub iters: Option<usize>,
    pub wsize: usize,
    pub ind: usize,
    pub weights: Option<PathBuf>,
    pub preemph: f64,
    pub log_delta: f64,
}

impl Default for InvertOpts {
    fn default() -> Self {
        let gl = GlConfig::default();
        InvertOpts {
            iters: None,
            wsize: gl.w_size,
            ind: gl.ind,
            weights: None,
            preemph: gl.base.preemph_coef,
            log_delta: gl.base.log_delta,
        }
    }
}

pub fn cmd_analyze(
    input: &Path,
    output: &Path,
    opts: &AnalysisOpts,
) -> Result<LogMagSpectrogram, CliError> {
    let cfg = opts.stream_config();
    let clip = wav_read_expecting(input, cfg.sample_rate)?;
    let spec = analyze(&clip.samples, &cfg)?;
    save_spectrogram(&spec, output)?;
    Ok(spec)
}

fn gl_config(spec: &LogMagSpectrogram, opts: &InvertOpts) -> GlConfig {
    GlConfig {
        w_size: opts.wsize,
        n_iters: opts.iters.unwrap_or(GlConfig::default().n_iters),
        ind: opts.ind,
        base: spec.stream_config(opts.preemph, opts.log_delta),
    }
}

fn load_or_seed_weights(path: &Path) -> Result<melgan::WeightSet, CliError> {
    if path.exists() {
        return Ok(load_weights(path)?);
    }
    match std::env::var(SEED_ENV).ok().and_then(|v| v.parse::<u64>().ok()) {
        Some(seed) => {
            let set = random_weights(&GeneratorArch::default(), seed);
            save_weights(path, &set)?;
            Ok(set)
        }
        None => Err(CliError::WeightsUnavailable(path.to_owned())),
    }
}

fn build_generator(spec: &LogMagSpectrogram, weights_path: &Path) -> Result<Generator, CliError> {
    let arch = GeneratorArch::default();
    if spec.frame_step != arch.frame_step {
        return Err(CliError::StepMismatch { expected: arch.frame_step, got: spec.frame_step });
    }
    let weights = load_or_seed_weights(weights_path)?;
    Ok(Generator::new(arch, &weights)?)
}

pub fn cmd_invert(
    input: &Path,
    output: &Path,
    vocoder: InvertVocoder,
    opts: &InvertOpts,
) -> Result<usize, CliError> {
    let spec = load_spectrogram(input)?;
    let samples: Vec<f64> = match vocoder {
        InvertVocoder::Ngl => {
            let iters = opts.iters.unwrap_or(70);
            gl_nonstreaming(&spec, iters, opts.preemph, opts.log_delta)?
        }
        InvertVocoder::Sgl => {
            let cfg = gl_config(&spec, opts);
            let mut stream = GlStream::new(&cfg)?;
            let mut out = Vec::new();
            for frame in &spec.frames {
                out.extend(stream.push(frame)?);
            }
            out.extend(stream.flush()?);
            out
        }
        InvertVocoder::Melgan => {
            let weights_path =
                opts.weights.as_deref().ok_or(CliError::MelganNeedsWeights)?;
            let generator = Arc::new(build_generator(&spec, weights_path)?);
            let mut stream = GeneratorStream::new(generator);
            let mut out = Vec::new();
            for frame in &spec.frames {
                out.extend(stream.push(frame)?.into_iter().map(f64::from));
            }
            out
        }
    };
    let n = samples.len();
    wav_write(output, &WavClip { sample_rate: spec.sample_rate, samples })?;
    Ok(n)
}

#[derive(Debug, Clone, Default)]
pub struct BenchOpts {
    pub warmup: usize,
    pub invert: InvertOpts,
}

pub fn cmd_bench(
    input: &Path,
    vocoder: BenchVocoder,
    opts: &BenchOpts,
) -> Result<BenchReport, CliError> {
    let spec = load_spectrogram(input)?;
    let mut voc: Box<dyn StreamingVocoder> = match vocoder {
        BenchVocoder::Sgl => Box::new(GlVocoder::new(&gl_config(&spec, &opts.invert))?),
        BenchVocoder::Melgan => {
            let weights_path =
                opts.invert.weights.as_deref().ok_or(CliError::MelganNeedsWeights)?;
            let generator = Arc::new(build_generator(&spec, weights_path)?);
            Box::new(MelganVocoder::new(generator, spec.sample_rate))
        }
        BenchVocoder::Null => Box::new(NullVocoder::new(spec.sample_rate, spec.frame_step)),
    };
    Ok(run_bench(voc.as_mut(), &spec, opts.warmup)?)
}

/// Objective scores of an estimate against a reference clip.
#[derive(Debug, Clone, Copy)]
pub struct CompareScores {
    pub sc_db: f64,
    pub snr_db: f64,
}

pub fn cmd_compare(
    reference: &Path,
    estimate: &Path,
    shift: usize,
    opts: &AnalysisOpts,
) -> Result<CompareScores, CliError> {
    let cfg = opts.stream_config();
    let ref_clip = wav_read_expecting(reference, cfg.sample_rate)?;
    let est_clip = wav_read_expecting(estimate, cfg.sample_rate)?;
    let (r, e) = align_by_shift(&ref_clip.samples, &est_clip.samples, shift)?;
    let sc_db = spectral_convergence(&magnitude_frames(r, &cfg)?, &magnitude_frames(e, &cfg)?)?;
    let snr_db = snr(r, e)?;
    Ok(CompareScores { sc_db, snr_db })
}
