use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "glass-anneal",
    version,
    about = "Spin-glass landscape theory tables, direct simulations, annealed training runs, and SVG plots"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form theory outputs: a constants report and CSV tables.
    Theory(TheoryArgs),
    /// Direct glass simulations and Monte Carlo checks.
    #[command(subcommand)]
    Glass(GlassCommand),
    /// Regularized spherical descent on a glass or a small MLP.
    Train(Box<TrainArgs>),
    /// Render a CSV as a standalone SVG line plot.
    Plot(PlotArgs),
    /// Re-run the command recorded in a manifest.
    Replay(ReplayArgs),
}

#[derive(Debug, Args)]
pub struct TheoryArgs {
    /// Mixture spec `p:gamma[,p:gamma...]`, e.g. `3:1.0` or `3:1.0,2:0.5`.
    #[arg(long)]
    pub mixture: String,

    /// Write the landscape-constants report (constants.txt).
    #[arg(long)]
    pub constants: bool,

    /// Write one CSV table.
    #[arg(long, value_enum)]
    pub table: Option<TableKind>,

    /// Grid points per table axis.
    #[arg(long, default_value_t = 101)]
    pub points: usize,

    /// Also report finite-size constants P_N, Q_N at this dimension.
    #[arg(long)]
    pub n: Option<u32>,

    /// Directory for the report, tables, and manifest.
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    /// Hessian bulk density and CDF over the spectrum support.
    Semicircle,
    /// Index fraction against the mean Hessian eigenvalue.
    IndexVsEigenvalue,
    /// Index fraction and most likely mean eigenvalue against energy.
    IndexVsEnergy,
    /// Complexity on an (energy, mean eigenvalue) grid.
    ComplexitySurface,
}

#[derive(Debug, Subcommand)]
pub enum GlassCommand {
    /// Draw a coupling tensor and dump its values.
    Sample(SampleArgs),
    /// Projected gradient descent on the sphere; one CSV row per step.
    Descend(DescendArgs),
    /// GOE spectrum with semicircle fit statistics in the manifest.
    Goe(GoeArgs),
    /// Exact Gibbs enumeration of a small SK instance.
    Enumerate(EnumerateArgs),
    /// Monte Carlo check of the covariance function against theory.
    Covcheck(CovcheckArgs),
    /// Descend and measure the empirical Hessian index along the way.
    Indexscan(IndexscanArgs),
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    /// Spin count.
    #[arg(long)]
    pub n: usize,
    /// Interaction order.
    #[arg(long)]
    pub p: u32,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value = "couplings.csv")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct DescendArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub p: u32,
    /// Gradient steps to take.
    #[arg(long)]
    pub steps: usize,
    /// Step size.
    #[arg(long)]
    pub lr: f64,
    /// L2 regularization strength added to the energy.
    #[arg(long, default_value_t = 0.0)]
    pub l2: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value = "descend.csv")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct GoeArgs {
    /// Matrix dimension.
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value = "goe.csv")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    /// Spin count; enumeration visits all 2^n states.
    #[arg(long)]
    pub n: usize,
    /// Inverse temperature.
    #[arg(long)]
    pub beta: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value = "gibbs.csv")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct CovcheckArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub p: u32,
    /// Disorder samples per overlap bin.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value = "covcheck.csv")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct IndexscanArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub steps: u64,
    #[arg(long)]
    pub lr: f64,
    /// Measure the Hessian index every this many steps (default: first and
    /// last step only).
    #[arg(long)]
    pub measure_every: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value = "indexscan.csv")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    /// Flat key=value config file; command-line flags override its entries.
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// What to optimize.
    #[arg(long, value_enum)]
    pub target: Option<TargetKind>,

    /// Glass target: spin count.
    #[arg(long)]
    pub n: Option<usize>,
    /// Glass target: interaction order.
    #[arg(long)]
    pub p: Option<u32>,

    /// MLP target: input width.
    #[arg(long)]
    pub d_in: Option<usize>,
    /// MLP target: hidden width.
    #[arg(long)]
    pub d_h: Option<usize>,
    /// MLP target: output width.
    #[arg(long)]
    pub d_out: Option<usize>,
    /// MLP target: teacher-student samples.
    #[arg(long)]
    pub samples: Option<usize>,
    /// MLP target: teacher label noise.
    #[arg(long)]
    pub noise: Option<f64>,

    /// Regularization schedule.
    #[arg(long, value_enum)]
    pub algo: Option<AlgoKind>,
    /// Base regularization strength.
    #[arg(long)]
    pub lambda0: Option<f64>,
    /// Gradient step size.
    #[arg(long)]
    pub lr: Option<f64>,
    #[arg(long)]
    pub epochs: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Matched schedule: warmup epochs and smoothing memory.
    #[arg(long)]
    pub k: Option<u64>,
    /// Cosine period in epochs.
    #[arg(long = "T")]
    pub t: Option<u64>,
    /// Loss smoothing for the matched schedule.
    #[arg(long, value_enum)]
    pub smoothing: Option<SmoothingArg>,
    /// Matched schedule reaction to nonpositive losses.
    #[arg(long, value_enum)]
    pub loss_mode: Option<LossModeArg>,
    /// Two-step M-step sizing.
    #[arg(long, value_enum)]
    pub step_sign: Option<StepSignArg>,
    /// Schedule driving the two-step algorithm.
    #[arg(long, value_enum)]
    pub two_step_schedule: Option<ScheduleArg>,
    /// Halve the cosine band to [0, lambda0].
    #[arg(long)]
    pub normalized_cosine: Option<bool>,
    /// Hutchinson probes per epoch.
    #[arg(long)]
    pub trace_probes: Option<u32>,

    /// Output CSV (default train.csv).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also render loss and lambda curves to this SVG.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TargetKind {
    Glass,
    Mlp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgoKind {
    Fixed,
    Matched,
    Cosine,
    TwoStep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SmoothingArg {
    Identity,
    MovingAverage,
    Exponential,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LossModeArg {
    Strict,
    Signed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StepSignArg {
    Magnitude,
    SignPreserving,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScheduleArg {
    Constant,
    Cosine,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// Input CSV.
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, default_value = "plot.svg")]
    pub out: PathBuf,
    /// Column for the x axis (default: the first column).
    #[arg(long)]
    pub x: Option<String>,
    /// Series columns (default: every non-x column).
    #[arg(long, value_delimiter = ',')]
    pub y: Vec<String>,
    /// Dashed vertical markers at these x positions.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub vline: Vec<f64>,
    #[arg(long)]
    pub title: Option<String>,
}

#[derive(Debug, Args)]
pub struct ReplayArgs {
    /// Manifest whose recorded command line is re-run.
    #[arg(long)]
    pub manifest: PathBuf,
}
