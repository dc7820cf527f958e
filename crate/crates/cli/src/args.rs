use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "tangent-forge",
    version,
    about = "Exact parametric solutions of m*(x1^k+...+xt1^k) = n*(y1^k+...+yt2^k) for k = 1 and 3"
)]
pub struct Cli {
    /// Output format for results.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the symbolic parametric solution for tuple lengths t1, t2.
    Derive(DeriveArgs),
    /// Evaluate the symbolic solution at integer parameter values.
    Instantiate(InstantiateArgs),
    /// Check an integer tuple against the k = 1 and k = 3 equations.
    Verify(VerifyArgs),
    /// Enumerate small solutions over a parameter grid.
    Search(SearchArgs),
    /// Brute-force equal-sums witnesses in a bounded box.
    Oracle(OracleArgs),
    /// Regenerate a worked example and compare it with the published values.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ProblemArgs {
    #[arg(long)]
    pub t1: usize,
    #[arg(long)]
    pub t2: usize,
    /// Concrete value for m (symbolic when omitted).
    #[arg(long)]
    pub m: Option<u64>,
    /// Concrete value for n (symbolic when omitted).
    #[arg(long)]
    pub n: Option<u64>,
    /// Keep both m and n symbolic.
    #[arg(long, conflicts_with_all = ["m", "n"])]
    pub symbolic_mn: bool,
}

#[derive(Debug, Args)]
pub struct DeriveArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Also check both identities and nontriviality; exit 1 if any fails.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Args)]
pub struct InstantiateArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Parameter values, e.g. `p1=4,q1=1,r1=2,s1=3,m=1,n=1`.
    #[arg(long, allow_hyphen_values = true)]
    pub assign: String,
    /// Divide out the common factor and fix the sign.
    #[arg(long)]
    pub normalize: bool,
    /// Also print the positive equal-sums form (needs m = n or n = 0).
    #[arg(long)]
    pub equal_sums: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Tuple file with `m=`, `n=`, `xs=`, `ys=` lines.
    #[arg(long)]
    pub file: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<String>,
    /// Comma-separated left entries.
    #[arg(long, allow_hyphen_values = true)]
    pub xs: Option<String>,
    /// Comma-separated right entries.
    #[arg(long, allow_hyphen_values = true)]
    pub ys: Option<String>,
    /// Check a single exponent (1 or 3); both by default.
    #[arg(long)]
    pub k: Option<u32>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// key=value configuration file; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub t1: Option<usize>,
    #[arg(long)]
    pub t2: Option<usize>,
    #[arg(long)]
    pub m: Option<u64>,
    #[arg(long)]
    pub n: Option<u64>,
    /// Default parameter range, `lo..hi` inclusive.
    #[arg(long, allow_hyphen_values = true)]
    pub range: Option<String>,
    /// Per-variable range, e.g. `--var p1=-3..3`; repeatable.
    #[arg(long = "var", allow_hyphen_values = true)]
    pub vars: Vec<String>,
    /// Largest admitted absolute entry.
    #[arg(long)]
    pub height: Option<String>,
    /// Keep solutions that share a canonical key.
    #[arg(long)]
    pub no_dedup: bool,
    /// Keep degenerate and collapsed instances.
    #[arg(long)]
    pub keep_degenerate: bool,
    /// Emit at most this many solutions.
    #[arg(long)]
    pub limit: Option<usize>,
    /// Refuse grids with more points than this.
    #[arg(long)]
    pub max_points: Option<u64>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// key=value configuration file; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub m: Option<u64>,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub t1: Option<usize>,
    #[arg(long)]
    pub t2: Option<usize>,
    /// Entries range over 1..=bound.
    #[arg(long)]
    pub bound: Option<u64>,
    /// Largest admitted work estimate (tuples enumerated).
    #[arg(long)]
    pub ceiling: Option<u128>,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    #[arg(value_enum)]
    pub example: ExampleId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExampleId {
    Ex1,
    Ex2,
    Ex3,
    Ex3n0,
    Remark,
}

impl ExampleId {
    pub fn name(self) -> &'static str {
        match self {
            ExampleId::Ex1 => "ex1",
            ExampleId::Ex2 => "ex2",
            ExampleId::Ex3 => "ex3",
            ExampleId::Ex3n0 => "ex3n0",
            ExampleId::Remark => "remark",
        }
    }
}
