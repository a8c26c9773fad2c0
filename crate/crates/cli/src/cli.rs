//! Argument definitions.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use elso::EcdfConvention;

#[derive(Parser, Debug)]
#[command(
    name = "elso",
    version,
    about = "Empirical-likelihood tests for stochastic ordering of k samples",
    after_help = "Exit codes: 0 success, 2 input error, 3 invalid argument."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Test k groups for stochastic ordering (columns: group,value)
    KSample(KSampleArgs),
    /// Test one sample against a specified distribution (column: value)
    OneSample(OneSampleArgs),
    /// Tabulate Monte Carlo critical values over k and alpha
    Critvals(TabArgs),
    /// Run the power scenarios of a config file
    Power(PowerArgs),
    /// Export per-group survival-curve step coordinates as CSV
    Survcurves(SurvArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum MethodArg {
    /// Monte Carlo over finite samples
    Finite,
    /// Monte Carlo over the Brownian-bridge limit
    Limit,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum EcdfArg {
    /// a/(n+1) rank scores; matches the classical critical-value tables
    RankScore,
    /// a/n empirical cdfs, the literal statistic
    Raw,
}

impl EcdfArg {
    pub fn convention(self) -> EcdfConvention {
        match self {
            EcdfArg::RankScore => EcdfConvention::RankScore,
            EcdfArg::Raw => EcdfConvention::Raw,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            EcdfArg::RankScore => "rank-score",
            EcdfArg::Raw => "raw",
        }
    }
}

#[derive(Args, Debug)]
pub struct KSampleArgs {
    /// CSV file with header group,value
    #[arg(long)]
    pub input: PathBuf,
    /// Hypothesis order as comma-separated labels, largest first
    /// (--groups A,B,C tests whether A is stochastically largest)
    #[arg(long)]
    pub groups: Option<String>,
    /// Cone of the alternative: simple | tree:root=L | umbrella:peak=L |
    /// general:A<=B,... (constraints on cdf values)
    #[arg(long, default_value = "simple")]
    pub order: String,
    /// Also run the sequential one-sided KS benchmark test
    #[arg(long)]
    pub with_sn: bool,
    /// Null-distribution method
    #[arg(long, value_enum, default_value_t = MethodArg::Finite)]
    pub method: MethodArg,
    /// Ecdf convention used for the statistic and its finite-sample null
    #[arg(long, value_enum, default_value_t = EcdfArg::RankScore)]
    pub ecdf: EcdfArg,
    /// Monte Carlo replications for the null distribution
    #[arg(long, default_value_t = 100_000)]
    pub reps: usize,
    /// Grid size for the limit method
    #[arg(long, default_value_t = 1000)]
    pub grid: usize,
    /// Per-group size of the finite-sample null recipe (default: the
    /// data's own group sizes)
    #[arg(long)]
    pub null_n: Option<usize>,
    /// Master seed for the null simulation
    #[arg(long, default_value_t = 20_110_401)]
    pub seed: u64,
    /// Comma-separated significance levels for critical values
    #[arg(long, default_value = "0.01,0.05,0.10")]
    pub alphas: String,
    /// Directory for cached null distributions
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    /// Print the structured JSON report on stdout (human text moves to stderr)
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct OneSampleArgs {
    /// CSV file with header value
    #[arg(long)]
    pub input: PathBuf,
    /// Hypothesized distribution, e.g. uniform:a=0,b=1 | exponential:rate=1 |
    /// shifted-exponential:shift=0.1,rate=1 | normal:mean=0,var=1
    #[arg(long)]
    pub f0: String,
    /// Also compute the statistic integrated against the empirical cdf
    #[arg(long)]
    pub star: bool,
    /// Null-distribution method
    #[arg(long, value_enum, default_value_t = MethodArg::Limit)]
    pub method: MethodArg,
    /// Monte Carlo replications for the null distribution
    #[arg(long, default_value_t = 100_000)]
    pub reps: usize,
    /// Grid size for the limit method
    #[arg(long, default_value_t = 1000)]
    pub grid: usize,
    /// Master seed for the null simulation
    #[arg(long, default_value_t = 20_110_401)]
    pub seed: u64,
    /// Comma-separated significance levels for critical values
    #[arg(long, default_value = "0.01,0.05,0.10")]
    pub alphas: String,
    /// Directory for cached null distributions
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    /// Print the structured JSON report on stdout (human text moves to stderr)
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct TabArgs {
    /// k values: a range like 2..5 or a list like 2,3,5
    #[arg(long, default_value = "2..5")]
    pub k: String,
    /// Comma-separated significance levels
    #[arg(long, default_value = "0.01,0.05,0.10")]
    pub alphas: String,
    /// Tabulation method
    #[arg(long, value_enum, default_value_t = MethodArg::Finite)]
    pub method: MethodArg,
    /// Ecdf convention for the finite-sample method
    #[arg(long, value_enum, default_value_t = EcdfArg::RankScore)]
    pub ecdf: EcdfArg,
    /// Monte Carlo replications
    #[arg(long, default_value_t = 100_000)]
    pub reps: usize,
    /// Grid size for the limit method
    #[arg(long, default_value_t = 1000)]
    pub grid: usize,
    /// Per-group sample size of the finite-sample recipe
    #[arg(long, default_value_t = 100)]
    pub n_per_group: usize,
    /// Master seed
    #[arg(long, default_value_t = 20_110_401)]
    pub seed: u64,
    /// Directory for cached null distributions
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    /// Print the structured JSON table on stdout (human text moves to stderr)
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct PowerArgs {
    /// TOML file with [[scenario]] entries
    #[arg(long)]
    pub config: PathBuf,
    /// Replications for tabulating missing Tn critical values
    #[arg(long, default_value_t = 100_000)]
    pub null_reps: usize,
    /// Seed for tabulating missing Tn critical values
    #[arg(long, default_value_t = 20_110_401)]
    pub null_seed: u64,
    /// Directory for cached null distributions
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    /// Print structured JSON rows on stdout (human text moves to stderr)
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct SurvArgs {
    /// CSV file with header group,value
    #[arg(long)]
    pub input: PathBuf,
    /// Comma-separated group labels to include, in output order
    #[arg(long)]
    pub groups: Option<String>,
    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    pub output: Option<PathBuf>,
}
