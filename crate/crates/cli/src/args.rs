use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use stretched_schur::partitions::{IntVector, Partition};

#[derive(Parser, Debug)]
#[command(
    name = "stretched-schur",
    version,
    about = "Recurrences of stretched skew Schur polynomials"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Enumerate the semistandard tableaux of a skew shape.
    Tableaux(TableauxArgs),
    /// Expand a skew Schur polynomial.
    Schur(ShapeArgs),
    /// Insert one tableau into another.
    Insert(InsertArgs),
    /// The characteristic polynomial of a stretch direction.
    CharPoly(DirectionArgs),
    /// Verify the recurrence on consecutive indices of a family.
    Verify(RecurrenceArgs),
    /// Find the minimal annihilating polynomial of a family.
    Minimal(RecurrenceArgs),
    /// Count tableaux of a given weight.
    Kostka(KostkaArgs),
    /// Expand a skew Schur polynomial in monomial symmetric polynomials.
    MBasis(ShapeArgs),
    /// Compare the minimal polynomial with its predicted root set.
    Conjecture(RecurrenceArgs),
    /// Test whether tableau counts of kμ/kν are polynomial in k.
    Polynomiality(PolynomialityArgs),
    /// Roots of the specializations P_k(z) = s_k(z, ξ).
    Roots(RootsArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Pretty => "pretty",
        }
    }
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Output format; the default depends on the subcommand.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ShapeArgs {
    #[arg(long)]
    pub outer: Partition,
    #[arg(long, default_value = "[]")]
    pub inner: Partition,
    /// Number of variables.
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct TableauxArgs {
    #[command(flatten)]
    pub shape: ShapeArgs,
    /// Keep only tableaux of this weight, e.g. [3,1,2].
    #[arg(long)]
    pub w: Option<IntVector>,
}

#[derive(Args, Debug)]
pub struct InsertArgs {
    /// Tableau JSON, or @path to read it from a file.
    #[arg(long)]
    pub left: String,
    /// Tableau JSON, or @path to read it from a file.
    #[arg(long)]
    pub right: String,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct DirectionArgs {
    #[arg(long)]
    pub mu: Partition,
    #[arg(long, default_value = "[]")]
    pub nu: Partition,
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    #[arg(long, default_value = "[]")]
    pub kappa: Partition,
    #[arg(long, default_value = "[]")]
    pub lambda: Partition,
    #[arg(long)]
    pub mu: Partition,
    #[arg(long, default_value = "[]")]
    pub nu: Partition,
    #[arg(long)]
    pub n: usize,
}

#[derive(Args, Debug)]
pub struct RecurrenceArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// First index to check, overriding the computed one.
    #[arg(long)]
    pub r: Option<usize>,
    /// Number of consecutive indices to check; defaults to deg(χ) + 3.
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct KostkaArgs {
    #[arg(long)]
    pub outer: Partition,
    #[arg(long, default_value = "[]")]
    pub inner: Partition,
    /// Weight vector; its length is the alphabet size.
    #[arg(long)]
    pub w: IntVector,
    /// Also build a witness tableau for the k-fold stretch.
    #[arg(long)]
    pub k: Option<usize>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct PolynomialityArgs {
    #[arg(long)]
    pub mu: Partition,
    #[arg(long, default_value = "[]")]
    pub nu: Partition,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 12)]
    pub kmax: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct RootsArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Common modulus of ξ2, …, ξn.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub xi_radius: f64,
    /// Arguments of ξ2, …, ξn in radians, e.g. [0,1.5]; all zero by default.
    #[arg(long, allow_hyphen_values = true)]
    pub xi_angles: Option<Angles>,
    #[arg(long, default_value_t = 10)]
    pub kmax: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Angles(pub Vec<f64>);

impl std::str::FromStr for Angles {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let body = s.trim();
        let body = body
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .unwrap_or(body)
            .trim();
        if body.is_empty() {
            return Ok(Angles(Vec::new()));
        }
        body.split(',')
            .map(|a| a.trim().parse::<f64>().map_err(|e| format!("`{a}`: {e}")))
            .collect::<Result<_, _>>()
            .map(Angles)
    }
}
