use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "ratapprox", version, about = "Rational approximation of one-variable functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build an approximant and print its coefficients and error report.
    Approx(ApproxArgs),
    /// Like `approx`, and also write the error curve.
    Report(ApproxArgs),
    /// Build two perturbed approximants and analyse their error approximant.
    Autocorrect(AutocorrectArgs),
    /// Measure the elementary-function kernels against a reference.
    ElemfunCheck(ElemfunArgs),
    /// Fit a rational model to a spline through tabulated samples.
    Model(ModelArgs),
    /// Compare a Chebyshev partial sum with the rational approximant built from it.
    Accelerate(AccelerateArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Pade,
    PcLinear,
    PcCross,
    PcNonlinear,
    Remez,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesMethod {
    PcLinear,
    PcCross,
    PcNonlinear,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Doc,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormArg {
    B0,
    Bm,
    An,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum WeightArg {
    #[default]
    Abs,
    Rel,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplineArg {
    Linear,
    Cubic,
    Natural,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrecisionArg {
    Ordinary,
    Enhanced,
    Both,
}

/// Where the target function comes from.
#[derive(Args, Debug, Clone)]
pub struct FunctionArgs {
    /// Builtin: sqrt exp exp10 ln lg sin cos tan atan asin sin-scaled[:k] cos-scaled[:k] tan-scaled[:k].
    #[arg(long = "fn", value_name = "NAME")]
    pub function: Option<String>,
    /// Taylor coefficients about the origin, one per line.
    #[arg(long, value_name = "PATH")]
    pub taylor_file: Option<PathBuf>,
    /// Chebyshev coefficients in the reference variable, one per line.
    #[arg(long, value_name = "PATH")]
    pub cheb_file: Option<PathBuf>,
    /// Two-column sample table, interpolated by a cubic spline.
    #[arg(long, value_name = "PATH")]
    pub samples_file: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true, default_value_t = -1.0)]
    pub a: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
    pub b: f64,
}

/// Degrees, form and numerical options.
#[derive(Args, Debug, Clone)]
pub struct ShapeArgs {
    /// Denominator degree.
    #[arg(long)]
    pub m: usize,
    /// Numerator degree.
    #[arg(long)]
    pub n: usize,
    /// Even form P(t²)/Q(t²).
    #[arg(long, conflicts_with = "odd")]
    pub even: bool,
    /// Odd form t·P(t²)/Q(t²).
    #[arg(long)]
    pub odd: bool,
    #[arg(long, value_enum, default_value = "b0")]
    pub norm: NormArg,
    /// Gauss-Chebyshev quadrature nodes.
    #[arg(long, default_value_t = 128)]
    pub nodes: usize,
    /// Error checkpoints (grid intervals).
    #[arg(long, env = "RATAPPROX_CHECKPOINTS", default_value_t = 2000)]
    pub checkpoints: usize,
    #[arg(long, value_enum, default_value = "abs")]
    pub weight: WeightArg,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ApproxArgs {
    #[command(flatten)]
    pub function: FunctionArgs,
    #[command(flatten)]
    pub shape: ShapeArgs,
    #[arg(long, value_enum)]
    pub method: Method,
    /// File for the error curve columns `x Δ(x) δ(x)`.
    #[arg(long, value_name = "PATH")]
    pub curve: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct AutocorrectArgs {
    #[command(flatten)]
    pub function: FunctionArgs,
    #[command(flatten)]
    pub shape: ShapeArgs,
    #[arg(long, value_enum, default_value = "pc-linear")]
    pub method: SeriesMethod,
    /// Taylor partial-sum degrees of the two constructions.
    #[arg(long = "N1", requires = "n2")]
    pub n1: Option<usize>,
    #[arg(long = "N2", requires = "n1")]
    pub n2: Option<usize>,
    /// Quadrature node counts of the two constructions.
    #[arg(long, requires = "nodes2")]
    pub nodes1: Option<usize>,
    #[arg(long, requires = "nodes1")]
    pub nodes2: Option<usize>,
    /// Relative noise level on the sampled values of the second construction.
    #[arg(long)]
    pub noise: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Build the second approximant under this normalization.
    #[arg(long, value_enum)]
    pub switch_norm: Option<NormArg>,
}

#[derive(Args, Debug)]
pub struct ElemfunArgs {
    /// One of lg exp10 ln exp sin cos tan atan asin; all kernels when omitted.
    #[arg(long = "fn", value_name = "NAME")]
    pub function: Option<String>,
    #[arg(long, value_enum, default_value = "both")]
    pub precision: PrecisionArg,
    #[arg(long, default_value_t = 2000)]
    pub grid: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ModelArgs {
    #[arg(long, value_name = "PATH")]
    pub samples_file: PathBuf,
    #[arg(long, value_enum, default_value = "cubic")]
    pub spline: SplineArg,
    #[command(flatten)]
    pub shape: ShapeArgs,
    #[arg(long, value_name = "PATH")]
    pub curve: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct AccelerateArgs {
    #[command(flatten)]
    pub function: FunctionArgs,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, conflicts_with = "odd")]
    pub even: bool,
    #[arg(long)]
    pub odd: bool,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}
