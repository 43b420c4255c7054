use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use trigbounds::bounds::BoundRef;
use trigbounds::ChainId;

#[derive(Debug, Parser)]
#[command(name = "trigbounds", version, about = "Verify refined Bernoulli-type bounds for trigonometric products")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sweep (and optionally certify) inequality chains.
    Verify(VerifyArgs),
    /// Compare the sharpness of two bounds.
    Compare(CompareArgs),
    /// Classify the printed and corrected forms of B13, B17 and B18.
    Audit(AuditArgs),
    /// Print the series constants and optionally check partial sums.
    Constants(ConstantsArgs),
    /// Time the closed-form evaluations.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Emit {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OutputArgs {
    /// Output encoding.
    #[arg(long, value_enum, default_value = "json")]
    pub emit: Emit,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ChainSelection {
    All,
    One(ChainId),
}

impl FromStr for ChainSelection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(ChainSelection::All);
        }
        s.parse::<ChainId>()
            .map(ChainSelection::One)
            .map_err(|_| format!("unknown chain '{s}' (expected C1..C7 or all)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VariantSelection {
    Corrected,
    Printed,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Float,
    Interval,
}

/// `auto` or a comma-separated list of values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum AlphaList {
    Auto,
    Values(Vec<f64>),
}

impl FromStr for AlphaList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(AlphaList::Auto);
        }
        parse_list(s).map(AlphaList::Values)
    }
}

fn parse_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| format!("'{t}' is not a finite number"))
        })
        .collect()
}

/// `lo,hi`
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DomainArg {
    pub lo: f64,
    pub hi: f64,
}

impl FromStr for DomainArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match parse_list(s)?.as_slice() {
            [lo, hi] if lo < hi => Ok(DomainArg { lo: *lo, hi: *hi }),
            _ => Err(format!("'{s}' is not an interval lo,hi with lo < hi")),
        }
    }
}

fn parse_bound(s: &str) -> Result<BoundRef, String> {
    s.parse::<BoundRef>().map_err(|e| e.to_string())
}

fn parse_positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("'{s}' is not a positive number")),
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    /// C1..C7 or all.
    #[arg(long, default_value = "all")]
    pub chain: ChainSelection,
    #[arg(long, value_enum, default_value = "corrected")]
    pub variant: VariantSelection,
    /// x-grid size per alpha.
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(2..))]
    pub grid: u64,
    /// `auto` or a comma-separated list.
    #[arg(long, default_value = "auto")]
    pub alphas: AlphaList,
    /// Log-domain relative violation threshold.
    #[arg(long, default_value_t = 1e-12, value_parser = parse_positive)]
    pub tol: f64,
    #[arg(long, value_enum, default_value = "float")]
    pub mode: ModeArg,
    /// Local bisections around each minimum.
    #[arg(long, default_value_t = 3)]
    pub refine: u32,
    /// Box budget for each certification in interval mode.
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    /// Include every sample in CSV output.
    #[arg(long)]
    pub samples: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CompareArgs {
    /// First bound, e.g. B8 or B17:printed.
    #[arg(long, value_parser = parse_bound)]
    pub a: BoundRef,
    /// Second bound.
    #[arg(long, value_parser = parse_bound)]
    pub b: BoundRef,
    /// Open interval lo,hi (defaults to the bounds' common domain).
    #[arg(long, allow_hyphen_values = true)]
    pub domain: Option<DomainArg>,
    /// Alpha for parameterized bounds.
    #[arg(long, value_parser = parse_positive)]
    pub alpha: Option<f64>,
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub grid: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct AuditArgs {
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(2..))]
    pub grid: u64,
    #[arg(long, default_value_t = 1e-12, value_parser = parse_positive)]
    pub tol: f64,
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ConstantsArgs {
    /// Compare each series' partial sum up to N with its closed form.
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
    pub check_partial_sums: Option<u64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BenchArgs {
    /// Timed evaluations per entry.
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub reps: u64,
    /// Untimed evaluations before timing.
    #[arg(long, default_value_t = 10_000)]
    pub warmup: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}
