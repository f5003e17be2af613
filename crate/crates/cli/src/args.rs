use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

const DEFAULT_GAMMA0: f64 = 0.353_553_390_593_273_8;
const DEFAULT_GAMMA1: f64 = std::f64::consts::FRAC_1_SQRT_2;

#[derive(Debug, Parser)]
#[command(name = "ctqw", version, about = "Continuous-time quantum walk with alternating couplings")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Coupling on bonds (x, x+1) with x even.
    #[arg(long, global = true, default_value_t = DEFAULT_GAMMA0, allow_negative_numbers = true)]
    pub gamma0: f64,
    /// Coupling on bonds (x, x+1) with x odd.
    #[arg(long, global = true, default_value_t = DEFAULT_GAMMA1, allow_negative_numbers = true)]
    pub gamma1: f64,
    #[arg(long, global = true, default_value_t = 500.0)]
    pub time: f64,
    /// Half-width of the reported window, or `auto` for the light-cone rule.
    #[arg(long, global = true, default_value = "auto")]
    pub radius: RadiusArg,
    #[arg(long, global = true, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,
    /// Number of grid points for spectral, limit and compare output.
    #[arg(long, global = true, default_value_t = 2001)]
    pub grid: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Complex amplitudes psi_t(x).
    Evolve,
    /// P(X_t = x) next to the finite-time arcsine approximation.
    Distribution,
    /// Limit density and CDF of X_t / t.
    Limit,
    /// Moments of X_t / t against their limits.
    Moments {
        #[arg(long, default_value_t = 8)]
        max_order: u32,
    },
    /// Empirical CDF of X_t / t against the limit CDF.
    Compare,
    /// Band-structure functions on a grid.
    Spectral {
        #[arg(long, value_enum, default_value_t = SpectralArg::H)]
        function: SpectralArg,
    },
    /// Runs the invariant suite and prints a report.
    Validate,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Evolve => "evolve",
            Command::Distribution => "distribution",
            Command::Limit => "limit",
            Command::Moments { .. } => "moments",
            Command::Compare => "compare",
            Command::Spectral { .. } => "spectral",
            Command::Validate => "validate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadiusArg {
    Auto,
    Fixed(usize),
}

impl FromStr for RadiusArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(RadiusArg::Auto);
        }
        s.parse::<usize>()
            .map(RadiusArg::Fixed)
            .map_err(|_| format!("expected a non-negative integer or `auto`, got `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    /// Bessel when |gamma0| == |gamma1|, quadrature otherwise.
    Auto,
    Quadrature,
    Bessel,
    Lattice,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpectralArg {
    G,
    AbsI,
    H,
    HPrime,
    #[value(alias = "kbranches")]
    KBranches,
    #[value(alias = "fbranches")]
    FBranches,
}
