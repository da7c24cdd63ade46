use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "momlat", version, about = "Operator calculus on a discrete momentum lattice")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the symbolic and numeric identity suites on a lattice.
    Verify(VerifyArgs),
    /// Normal-order an operator expression and report whether it is zero.
    Check(CheckArgs),
    /// Position eigenvector by the closed form, normalized.
    Eigvec(EigvecArgs),
    /// Eigenvalues of the truncated position operator.
    Spectrum(SpectrumArgs),
    /// Convergence of [X,P] + i on a Gaussian as the spacing shrinks.
    Continuum(ContinuumArgs),
    /// Square-well lattice and the identity suite on it.
    Well(WellArgs),
    /// Apply an operator expression to a grid function read from CSV.
    Apply(ApplyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct LatticeArgs {
    /// Momentum of the first lattice point.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub p0: f64,
    /// Lattice spacing.
    #[arg(long, default_value_t = 0.1, allow_hyphen_values = true)]
    pub a: f64,
    /// Number of lattice points.
    #[arg(long, default_value_t = 64)]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub lattice: LatticeArgs,
    /// Largest accepted interior residual.
    #[arg(long, default_value_t = 1e-10, allow_hyphen_values = true)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Expression over A, Abar, P, X, Q, H, D, Dbar, I, i and a.
    #[arg(allow_hyphen_values = true)]
    pub expr: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct EigvecArgs {
    #[command(flatten)]
    pub lattice: LatticeArgs,
    /// Eigenvalue of X; needs |a*x| <= 1.
    #[arg(long, allow_hyphen_values = true)]
    pub x: f64,
    /// Phase of phi(p0) in radians.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub phase: f64,
    /// Also write the JSON summary here when the main output is CSV.
    #[arg(long)]
    pub summary: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub lattice: LatticeArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ContinuumArgs {
    /// Strictly decreasing spacings, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0.1,0.05,0.025,0.0125")]
    pub spacings: Vec<f64>,
    /// Momentum window as lo:hi.
    #[arg(long, default_value = "-8:8", allow_hyphen_values = true)]
    pub window: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct WellArgs {
    /// Width of the well.
    #[arg(long = "L", allow_hyphen_values = true)]
    pub length: f64,
    /// Number of levels, i.e. lattice points.
    #[arg(long, default_value_t = 16)]
    pub levels: usize,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub hbar: f64,
    #[arg(long, default_value_t = 1e-10, allow_hyphen_values = true)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ApplyArgs {
    /// Operator expression, e.g. `X` or `[X,P]`.
    #[arg(long, allow_hyphen_values = true)]
    pub op: String,
    /// Grid function in `j,p,re,im` CSV; `-` reads standard input.
    #[arg(long)]
    pub input: PathBuf,
    /// Spacing, when the input has a single row.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}
