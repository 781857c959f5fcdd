use clap::{Args, Parser, Subcommand, ValueEnum};

pub const PREC_ENV: &str = "STIRLING_SUMS_PREC_BITS";

#[derive(Debug, Parser)]
#[command(name = "stirling-sums", version, about = "Factorial-series summation formulas for finite sums at real arguments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one formula.
    Eval(EvalArgs),
    /// Evaluate formulas and compare them with the brute-force sum.
    Compare(EvalArgs),
    /// Convergence table of one formula against the brute-force sum.
    Table(TableArgs),
    /// Print the supported constants.
    Constants(ConstantsArgs),
    /// List the formula catalog.
    List(ListArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct FormulaArgs {
    /// Formula id `family.vN`; `compare` also accepts `all`.
    #[arg(long)]
    pub formula: String,
    /// Upper summation limit, a positive decimal or fraction.
    #[arg(long)]
    pub x: String,
    /// Exponent for the power-sum families, real or `RE+IMi`.
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<String>,
    /// Base for the geometric families.
    #[arg(long)]
    pub a: Option<String>,
    /// Working precision in bits.
    #[arg(long, env = PREC_ENV, default_value_t = 192)]
    pub prec_bits: u32,
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub formula: FormulaArgs,
    /// Highest factorial-series order (outer terms for the slow formulas).
    #[arg(long, default_value_t = 64)]
    pub max_order: usize,
    /// Adaptive stopping tolerance.
    #[arg(long, default_value_t = 1e-30)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub formula: FormulaArgs,
    /// Number of table rows.
    #[arg(long)]
    pub max_order: usize,
}

#[derive(Debug, Clone, Args)]
pub struct ConstantsArgs {
    #[arg(long, env = PREC_ENV, default_value_t = 256)]
    pub prec_bits: u32,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct ListArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}
