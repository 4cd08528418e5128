use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "rankrange", version, about = "Higher rank numerical ranges of square matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form classification of the range of J_n(alpha) ⊕ beta I_m
    Classify(ClassifyArgs),
    /// Draw the range as an SVG figure (or its geometry as JSON)
    Plot(PlotArgs),
    /// Run both engines on a model and report how far apart they are
    Compare(CompareArgs),
    /// Decide whether a point lies in the range
    Member(MemberArgs),
    /// Print the sampled support data theta -> lambda_k
    Sample(SampleArgs),
}

/// Where the matrix comes from: either the Jordan-plus-scalar model or a file.
#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Size of the Jordan block J_n(alpha)
    #[arg(long, required_unless_present = "matrix_file")]
    pub n: Option<usize>,
    /// Multiplicity of the scalar block beta I_m
    #[arg(long, default_value_t = 0)]
    pub m: usize,
    /// Jordan eigenvalue, e.g. "0", "-1-i", "0.5@30" (polar, degrees)
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub alpha: String,
    /// Scalar block value, same syntax as --alpha
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub beta: String,
    /// JSON matrix {"rows": N, "entries": [[re, im], ...]} in row-major order
    #[arg(long, conflicts_with = "n")]
    pub matrix_file: Option<PathBuf>,
    /// Rank index starting at 1, or "all"
    #[arg(long, default_value = "all")]
    pub k: String,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of standard output
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SamplingArgs {
    /// Number of equally spaced angles in [0, 2pi)
    #[arg(long, default_value_t = rankrange::sampler::DEFAULT_RESOLUTION)]
    pub resolution: usize,
    /// Insert extra angles where the support data bends sharply
    #[arg(long)]
    pub refine: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Closed,
    Sampler,
    Both,
}

#[derive(Debug, Clone, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct PlotArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(flatten)]
    pub sampling: SamplingArgs,
    /// closed draws the exact boundary, sampler the half-plane intersection
    #[arg(long, value_enum)]
    pub engine: Option<Engine>,
    /// Number of support lines to draw (0 for none)
    #[arg(long, default_value_t = 360)]
    pub lines: usize,
    /// Mark the angle sets of the closed form as arcs
    #[arg(long)]
    pub show_sets: bool,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Number of equally spaced angles in [0, 2pi); the profile is always refined
    #[arg(long, default_value_t = rankrange::sampler::DEFAULT_RESOLUTION)]
    pub resolution: usize,
    /// Largest accepted Hausdorff distance for two-dimensional regions
    #[arg(long, default_value_t = 2e-3)]
    pub tol: f64,
}

#[derive(Debug, Clone, Args)]
pub struct MemberArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(flatten)]
    pub sampling: SamplingArgs,
    /// The point to test, same syntax as --alpha
    #[arg(long, allow_hyphen_values = true)]
    pub mu: String,
    #[arg(long, value_enum)]
    pub engine: Option<Engine>,
    /// Sampler tolerance; defaults to 1e-7 * max(1, max |lambda_k|)
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(flatten)]
    pub sampling: SamplingArgs,
}
