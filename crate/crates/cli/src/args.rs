use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "sl2fusion", version, about = "Exact (q, z)-characters of sl2 fusion products")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Compute a character by one route.
    Char(CharArgs),
    /// Run a cross-validation sweep; exit 1 if anything disagrees.
    Verify(VerifyArgs),
    /// Fusion character at distinct points, checked against C[e]/I(0).
    Fusion(FusionArgs),
    /// Dimensions of the functional model M(T).
    Funcmodel(FuncArgs),
    /// Print the generators of an ideal, one per line.
    Ideal(IdealArgs),
    /// Write the canonical golden files and their manifest.
    Golden(GoldenArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Route {
    Recurrence,
    Closed,
    Gordon,
    Quotient,
    Dual,
    Fusion,
    Funcmodel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Limit ideal J^A.
    #[value(name = "JA")]
    Ja,
    /// Powers of the truncated current at points T.
    #[value(name = "JAT")]
    Jat,
    /// The origin ideal I(0).
    #[value(name = "I0")]
    I0,
    /// Relations of the truncated algebra at distinct points Z.
    #[value(name = "IZ")]
    Iz,
    /// Relations at an arbitrary point Z (coordinates may coincide).
    #[value(name = "Ipt")]
    Ipt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteName {
    All,
    Thm21,
    Thm31,
    Thm41,
    Prop23,
    Prop24,
    Gordon,
    Dual,
    Flow,
    Rho,
    Qbinomial,
}

#[derive(Debug, Clone, Args)]
pub struct CharArgs {
    #[arg(long, value_enum)]
    pub route: Route,
    /// Multiset A as a comma list, e.g. 2,2.
    #[arg(long = "A")]
    pub a: Option<String>,
    /// Multiplicity profile b_1,b_2,... for the closed form.
    #[arg(long = "b")]
    pub b: Option<String>,
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    /// Points for JAT / dual / funcmodel: rationals or preset:NAME.
    #[arg(long = "T", allow_hyphen_values = true)]
    pub t: Option<String>,
    /// Points for IZ / Ipt / fusion: rationals or preset:NAME.
    #[arg(long = "Z", allow_hyphen_values = true)]
    pub z: Option<String>,
    /// Gordon level.
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub zmax: Option<u32>,
    #[arg(long)]
    pub smax: Option<u32>,
    /// Largest z-degree reported (defaults to where the quotient vanishes).
    #[arg(long)]
    pub kmax: Option<u32>,
    /// Polynomial degree cap for the functional model.
    #[arg(long)]
    pub cap: Option<u32>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: SuiteName,
    #[arg(long)]
    pub max_sum: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub smax: Option<u32>,
}

#[derive(Debug, Clone, Args)]
pub struct FusionArgs {
    #[arg(long = "A")]
    pub a: String,
    #[arg(long = "Z", allow_hyphen_values = true, default_value = "preset:integers")]
    pub z: String,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct FuncArgs {
    #[arg(long = "A")]
    pub a: String,
    /// Point T; all zeros gives the bigraded table.
    #[arg(long = "T", allow_hyphen_values = true)]
    pub t: Option<String>,
    #[arg(long)]
    pub cap: Option<u32>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct IdealArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long = "A")]
    pub a: String,
    #[arg(long = "T", allow_hyphen_values = true)]
    pub t: Option<String>,
    #[arg(long = "Z", allow_hyphen_values = true)]
    pub z: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct GoldenArgs {
    #[arg(long, default_value = "golden")]
    pub out: PathBuf,
}
