use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "deltaion",
    version,
    about = "Ionization of a periodically driven delta well: spectra, survival \
             probability, resonances, and wavefunction slices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Energy distribution Theta(k, t) on a k grid
    Spectrum(SpectrumArgs),
    /// Survival amplitude theta(t) on a t grid
    Survival(SurvivalArgs),
    /// Wavefunction slice psi(x, t) on an x grid
    Wavefunction(WavefunctionArgs),
    /// Resonance pole, decay rate, and the omega-spaced residue array
    Resonance(ResonanceArgs),
    /// Run the cross-route invariant suite and report pass/fail per check
    Validate(ValidateArgs),
    /// Emit the dataset(s) and gnuplot script for one of the figures
    ReproduceFigure(FigureArgs),
}

#[derive(Args)]
pub struct ModelArgs {
    /// Driving strength alpha
    #[arg(long)]
    pub alpha: f64,
    /// Driving frequency omega (units of the binding energy)
    #[arg(long)]
    pub omega: f64,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args)]
pub struct OutputArgs {
    /// Output file; stdout if omitted
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

/// Observation time: a non-negative real or the explicit token "inf".
#[derive(Copy, Clone, Debug, PartialEq)]
pub enum TimeArg {
    Finite(f64),
    Infinite,
}

impl std::str::FromStr for TimeArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "inf" {
            return Ok(TimeArg::Infinite);
        }
        match s.parse::<f64>() {
            Ok(t) if t.is_finite() && t >= 0.0 => Ok(TimeArg::Finite(t)),
            _ => Err(format!("expected a non-negative real or \"inf\", got {s:?}")),
        }
    }
}

impl std::fmt::Display for TimeArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TimeArg::Finite(t) => write!(f, "{t}"),
            TimeArg::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Observation time t, or "inf" for the full ionized distribution
    #[arg(long, default_value = "inf")]
    pub t: TimeArg,
    #[arg(long, default_value_t = 0.02)]
    pub k_min: f64,
    #[arg(long, default_value_t = 2.5)]
    pub k_max: f64,
    #[arg(long, default_value_t = 500)]
    pub k_count: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args)]
pub struct SurvivalArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = 0.0)]
    pub t_min: f64,
    #[arg(long)]
    pub t_max: f64,
    #[arg(long, default_value_t = 500)]
    pub t_count: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum PsiMethodArg {
    /// Bromwich-contour inversion of the Laplace field (moderate t)
    Contour,
    /// Spectral reconstruction from theta and Theta(k, t)
    Spectral,
}

#[derive(Args)]
pub struct WavefunctionArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Observation time (finite only)
    #[arg(long)]
    pub t: f64,
    #[arg(long, default_value_t = 0.0)]
    pub x_min: f64,
    #[arg(long)]
    pub x_max: f64,
    #[arg(long, default_value_t = 500)]
    pub x_count: usize,
    #[arg(long, value_enum, default_value = "contour")]
    pub method: PsiMethodArg,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args)]
pub struct ResonanceArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Half-width of the omega-spaced residue array
    #[arg(long, default_value_t = 8)]
    pub nmax: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Time horizon for the unitarity check; defaults to 10 periods
    #[arg(long)]
    pub t: Option<f64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum FigureId {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
}

#[derive(Args)]
pub struct FigureArgs {
    #[arg(long, value_enum)]
    pub id: FigureId,
    /// Directory for datasets and the plot script
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}
