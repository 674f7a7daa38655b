//! `hypercode`: batch runs over hypergraph codes.
//!
//! Every run writes `config.json` next to its outputs. `hypercode replay
//! config.json` repeats the run and reproduces the outputs byte for byte.
//! Exit codes: 0 success, 1 decoding failure, 2 usage or I/O error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

/// Seed used when neither `--seed` nor `HYPERCODE_SEED` is given.
pub const DEFAULT_SEED: u64 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "hypercode",
    version,
    about = "Hypergraph codes: bounds, construction, decoding, simulation"
)]
struct Cli {
    #[command(subcommand)]
    command: Invocation,
}

#[derive(Subcommand, Debug)]
enum Invocation {
    /// Distance exponents of the random ensembles and decoding radii.
    Bounds(BoundsArgs),
    /// Build a hypergraph code and write its hypergraph and manifest.
    Construct(ConstructArgs),
    /// Decode one received word.
    Decode(DecodeArgs),
    /// Monte-Carlo decoding sweeps or ensemble weight spectra.
    Simulate(SimulateArgs),
    /// Spectrum exponents of C1, C3 and random linear codes on one grid.
    Spectrum(SpectrumArgs),
    /// Repeat a run from its `config.json`.
    Replay(ReplayArgs),
}

/// The echoed configuration of a run.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "subcommand", rename_all = "lowercase")]
pub enum RunConfig {
    Bounds(BoundsArgs),
    Construct(ConstructArgs),
    Decode(DecodeArgs),
    Simulate(SimulateArgs),
    Spectrum(SpectrumArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundEnsemble {
    C1,
    C3,
    C2chernov,
    C2mindist,
    C2corollary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RadiusFormula {
    Refined,
    Simple,
    Bh,
    Epsilon,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
#[command(group = clap::ArgGroup::new("what").required(true).args(["ensemble", "radius"]))]
pub struct BoundsArgs {
    /// Ensemble whose distance exponent is evaluated.
    #[arg(long, value_enum)]
    pub ensemble: Option<BoundEnsemble>,
    /// Decoding radius formula.
    #[arg(long, value_enum)]
    pub radius: Option<RadiusFormula>,
    #[arg(long)]
    pub t: usize,
    /// Local code rate (c1, c3).
    #[arg(long)]
    pub rate: Option<f64>,
    /// Relative distance of the local code (radii, c2corollary).
    #[arg(long)]
    pub delta1: Option<f64>,
    /// Local code: a name such as `hamming_15` or `file:<path>`.
    #[arg(long)]
    pub code: Option<String>,
    #[arg(long)]
    pub kappa: Option<f64>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    pub alpha: f64,
    /// Number of interior grid points of the written curve.
    #[arg(long, default_value_t = 199)]
    pub points: usize,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Random,
    Path,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub model: ModelKind,
    #[arg(long)]
    pub t: usize,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Graph file, or one of `complete:<k>`, `cycle:<k>`, `petersen` (path model).
    #[arg(long)]
    pub graph: Option<String>,
    /// Local code: a name, `file:<path>` or `random:<rows>`.
    #[arg(long, default_value = "random:1")]
    pub code: String,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OddFinishArg {
    Majority,
    BranchOnly,
}

/// Decoder selection and parameters shared by `decode` and `simulate`.
#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct DecoderArgs {
    /// `bh` or `branching`.
    #[arg(long, default_value = "branching")]
    pub decoder: String,
    /// Threshold parameter, `p`, `p/q` or a decimal; defaults to `t + 1`.
    #[arg(long)]
    pub kappa: Option<String>,
    /// Branching depth.
    #[arg(long, default_value_t = 2)]
    pub depth: usize,
    #[arg(long, default_value_t = 50)]
    pub max_iters: usize,
    #[arg(long, default_value_t = 4096)]
    pub candidate_cap: usize,
    /// Finishing step for odd `t`.
    #[arg(long, value_enum, default_value = "majority")]
    pub odd_finish: OddFinishArg,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct DecodeArgs {
    #[arg(long)]
    pub manifest: PathBuf,
    /// File holding the received word as one line of `0`/`1`.
    #[arg(long)]
    pub input: PathBuf,
    /// Transmitted codeword, used for residuals in the trace.
    #[arg(long)]
    pub truth: Option<PathBuf>,
    #[command(flatten)]
    pub decoder: DecoderArgs,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OriginArg {
    Zero,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnsembleArg {
    C1,
    C2,
    C3,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct SimulateArgs {
    /// Code to decode (decoding sweep).
    #[arg(long, conflicts_with = "ensemble")]
    pub manifest: Option<PathBuf>,
    /// Error weights `a..b`, both ends included (decoding sweep).
    #[arg(long, default_value = "0..4")]
    pub sweep: String,
    #[arg(long, value_enum, default_value = "zero")]
    pub origin: OriginArg,
    #[command(flatten)]
    pub decoder: DecoderArgs,
    /// Sample weight spectra of this ensemble instead of decoding.
    #[arg(long, value_enum)]
    pub ensemble: Option<EnsembleArg>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Rows of the random local parity checks (c1, c3).
    #[arg(long)]
    pub rows: Option<usize>,
    /// Fixed local code (c2).
    #[arg(long)]
    pub code: Option<String>,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads; results do not depend on it.
    #[arg(long)]
    #[serde(skip)]
    pub jobs: Option<usize>,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub t: usize,
    #[arg(long)]
    pub rate: f64,
    #[arg(long, default_value_t = 199)]
    pub points: usize,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Args, Debug)]
struct ReplayArgs {
    /// A `config.json` written by an earlier run.
    config: PathBuf,
    /// Write the outputs here instead of the recorded directory.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[arg(long)]
    jobs: Option<usize>,
}

/// Why a run stopped.
#[derive(Debug)]
pub enum Failure {
    /// Bad arguments, unreadable input or a failed write: exit code 2.
    Usage(String),
    /// The decoder found no codeword: exit code 1.
    Decode,
}

impl From<hypercode::Error> for Failure {
    fn from(e: hypercode::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Invocation::Bounds(a) => commands::run(RunConfig::Bounds(a), None),
        Invocation::Construct(a) => commands::run(RunConfig::Construct(a), None),
        Invocation::Decode(a) => commands::run(RunConfig::Decode(a), None),
        Invocation::Simulate(a) => {
            let jobs = a.jobs;
            commands::run(RunConfig::Simulate(a), jobs)
        }
        Invocation::Spectrum(a) => commands::run(RunConfig::Spectrum(a), None),
        Invocation::Replay(a) => commands::replay(&a.config, a.out_dir, a.jobs),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Decode) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
