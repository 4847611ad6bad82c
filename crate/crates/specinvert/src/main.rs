//! Command-line front end for spectrogram analysis and inversion.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use specinvert::{
    cmd_analyze, cmd_bench, cmd_compare, cmd_invert, AnalysisOpts, BenchOpts, BenchVocoder,
    CliError, InvertOpts, InvertVocoder,
};

#[derive(Parser)]
#[command(
    name = "specinvert",
    about = "Analyze audio into log-magnitude spectrograms and invert them back to audio"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum InvertVocoderArg {
    /// Whole-signal iterative phase reconstruction.
    Ngl,
    /// Streaming sliding-window phase reconstruction.
    Sgl,
    /// Streaming neural generator (needs --weights).
    Melgan,
}

impl From<InvertVocoderArg> for InvertVocoder {
    fn from(v: InvertVocoderArg) -> Self {
        match v {
            InvertVocoderArg::Ngl => InvertVocoder::Ngl,
            InvertVocoderArg::Sgl => InvertVocoder::Sgl,
            InvertVocoderArg::Melgan => InvertVocoder::Melgan,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchVocoderArg {
    Sgl,
    Melgan,
    /// Copy-through baseline that emits silence.
    Null,
}

impl From<BenchVocoderArg> for BenchVocoder {
    fn from(v: BenchVocoderArg) -> Self {
        match v {
            BenchVocoderArg::Sgl => BenchVocoder::Sgl,
            BenchVocoderArg::Melgan => BenchVocoder::Melgan,
            BenchVocoderArg::Null => BenchVocoder::Null,
        }
    }
}

#[derive(clap::Args)]
struct AnalysisFlags {
    #[arg(long, default_value_t = 16_000)]
    sample_rate: u32,
    #[arg(long, default_value_t = 2048)]
    fft_size: usize,
    #[arg(long, default_value_t = 800)]
    frame_size: usize,
    #[arg(long, default_value_t = 200)]
    frame_step: usize,
    #[arg(long, default_value_t = 0.97)]
    preemph: f64,
    #[arg(long, default_value_t = 0.01)]
    log_delta: f64,
}

impl From<&AnalysisFlags> for AnalysisOpts {
    fn from(f: &AnalysisFlags) -> Self {
        AnalysisOpts {
            sample_rate: f.sample_rate,
            fft_size: f.fft_size,
            frame_size: f.frame_size,
            frame_step: f.frame_step,
            preemph: f.preemph,
            log_delta: f.log_delta,
        }
    }
}

#[derive(clap::Args)]
struct InvertFlags {
    /// Iterations: whole-signal count for ngl (default 70), per-hop count
    /// for sgl (default 4).
    #[arg(long)]
    iters: Option<usize>,
    /// Sliding window size in frames for sgl.
    #[arg(long, default_value_t = 4)]
    wsize: usize,
    /// Commit position inside the sliding window for sgl.
    #[arg(long, default_value_t = 2)]
    ind: usize,
    /// Weights file for the melgan vocoder.
    #[arg(long)]
    weights: Option<PathBuf>,
    #[arg(long, default_value_t = 0.97)]
    preemph: f64,
    #[arg(long, default_value_t = 0.01)]
    log_delta: f64,
}

impl From<&InvertFlags> for InvertOpts {
    fn from(f: &InvertFlags) -> Self {
        InvertOpts {
            iters: f.iters,
            wsize: f.wsize,
            ind: f.ind,
            weights: f.weights.clone(),
            preemph: f.preemph,
            log_delta: f.log_delta,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Frame a WAV clip into a log-magnitude spectrogram file.
    Analyze {
        input: PathBuf,
        output: PathBuf,
        #[command(flatten)]
        flags: AnalysisFlags,
    },
    /// Reconstruct audio from a spectrogram file.
    Invert {
        input: PathBuf,
        output: PathBuf,
        #[arg(long, value_enum)]
        vocoder: InvertVocoderArg,
        #[command(flatten)]
        flags: InvertFlags,
    },
    /// Measure per-hop latency and the real-time factor of a streaming vocoder.
    Bench {
        input: PathBuf,
        #[arg(long, value_enum)]
        vocoder: BenchVocoderArg,
        /// Hops pushed before measurement starts.
        #[arg(long, default_value_t = 8)]
        warmup: usize,
        /// Also write the report as key=value text to this path.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Also write the report as JSON to this path.
        #[arg(long)]
        json: Option<PathBuf>,
        #[command(flatten)]
        flags: InvertFlags,
    },
    /// Score an estimate against a reference clip.
    Compare {
        reference: PathBuf,
        estimate: PathBuf,
        /// Leading estimate samples to drop before scoring.
        #[arg(long, default_value_t = 0)]
        shift: usize,
        #[command(flatten)]
        flags: AnalysisFlags,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze { input, output, flags } => {
            let spec = cmd_analyze(&input, &output, &(&flags).into())?;
            println!(
                "wrote {}: {} frames x {} bins",
                output.display(),
                spec.num_frames(),
                spec.num_bins()
            );
        }
        Command::Invert { input, output, vocoder, flags } => {
            let n = cmd_invert(&input, &output, vocoder.into(), &(&flags).into())?;
            println!("wrote {}: {} samples", output.display(), n);
        }
        Command::Bench { input, vocoder, warmup, report, json, flags } => {
            let opts = BenchOpts { warmup, invert: (&flags).into() };
            let result = cmd_bench(&input, vocoder.into(), &opts)?;
            print!("{}", result.to_kv_text());
            if let Some(path) = report {
                std::fs::write(path, result.to_kv_text())?;
            }
            if let Some(path) = json {
                std::fs::write(path, result.to_json())?;
            }
        }
        Command::Compare { reference, estimate, shift, flags } => {
            let scores = cmd_compare(&reference, &estimate, shift, &(&flags).into())?;
            println!("sc_db={:.6}", scores.sc_db);
            println!("snr_db={:.6}", scores.snr_db);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
