use clap::{Args, Parser, Subcommand, ValueEnum};

use powersum_core::sets::SetDescriptor;
use powersum_core::verify::Suite;

#[derive(Debug, Parser)]
#[command(name = "powersum", version, about = "Power sums S_k(n) modulo n, characterized sets and their densities")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    pub format: Format,

    /// Worker threads for data-parallel work (0 = one per core). Output does
    /// not depend on this value.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Prime-power closed forms combined by CRT.
    Fast,
    /// Direct summation (capped).
    Naive,
    /// The Carlitz–von Staudt congruence (even n, k > 1).
    Cvs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute S_k(n) mod n.
    Residue(ResidueArgs),
    /// Test whether n belongs to a set.
    Member(MemberArgs),
    /// List the members of a set up to a limit.
    Enumerate(EnumerateArgs),
    /// Certified density enclosure, empirical density or supremum bound.
    Density(DensityArgs),
    /// Run a self-verification suite (oracle, sets, density or all).
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct ResidueArgs {
    #[arg(short = 'n', value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(short = 'k', value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
    #[arg(long, value_enum, default_value_t = Method::Fast)]
    pub method: Method,
    /// Largest n accepted by naive summation.
    #[arg(long, env = "POWERSUM_NAIVE_CAP", default_value_t = powersum_core::DEFAULT_SCAN_CAP)]
    pub naive_cap: u64,
}

#[derive(Debug, Args)]
pub struct MemberArgs {
    /// Set descriptor, e.g. `affine:1,1`, `anti-korselt`, `lambda-half`, `upsilon:2`, `h:3`.
    #[arg(long)]
    pub set: SetDescriptor,
    #[arg(short = 'n', value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub set: SetDescriptor,
    /// Enumerate members in 1..=limit.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub limit: u64,
    /// Largest accepted limit.
    #[arg(long, env = "POWERSUM_SCAN_CAP", default_value_t = powersum_core::DEFAULT_SCAN_CAP)]
    pub scan_cap: u64,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("target").required(true).args(["set", "supremum"]))]
pub struct DensityArgs {
    /// Set whose density is reported (`affine:a,b` and `anti-korselt` get a
    /// certified enclosure).
    #[arg(long)]
    pub set: Option<SetDescriptor>,
    /// Report the supremum bound over the first K odd primes instead.
    #[arg(long, value_name = "K")]
    pub supremum: Option<u32>,
    /// Primes up to this bound are treated exactly.
    #[arg(long, default_value_t = 300)]
    pub prime_bound: u64,
    /// Inclusion–exclusion depth.
    #[arg(long, default_value_t = 5)]
    pub pie_depth: u32,
    /// Node budget for the inclusion–exclusion enumeration.
    #[arg(long, env = "POWERSUM_PIE_MAX_NODES", default_value_t = 50_000_000)]
    pub max_nodes: u64,
    /// Also count members up to this limit.
    #[arg(long, value_name = "LIMIT")]
    pub empirical: Option<u64>,
    /// Largest accepted empirical limit.
    #[arg(long, env = "POWERSUM_SCAN_CAP", default_value_t = powersum_core::DEFAULT_SCAN_CAP)]
    pub scan_cap: u64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// oracle, sets, density or all.
    pub suite: Suite,
    #[arg(long, default_value_t = 600)]
    pub max_n: u64,
    #[arg(long, default_value_t = 40)]
    pub max_k: u64,
    #[arg(long, default_value_t = 20_000)]
    pub scan_limit: u64,
    #[arg(long, default_value_t = 50)]
    pub prime_bound: u64,
    #[arg(long, default_value_t = 5)]
    pub pie_depth: u32,
    /// Largest accepted scan limit.
    #[arg(long, env = "POWERSUM_SCAN_CAP", default_value_t = powersum_core::DEFAULT_SCAN_CAP)]
    pub scan_cap: u64,
}
