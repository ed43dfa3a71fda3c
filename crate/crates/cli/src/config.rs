//! Run configuration: command-line flags layered over an optional JSON file.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use freefield_core::realizations::{Family, RealizationParams, Role, Variant};
use freefield_core::scalar::parse_rational;
use freefield_core::{HalfInt, Rational};

#[derive(Debug, Parser)]
#[command(name = "freefield", version, about = "Exact checks for free-field superconformal realizations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Relation, lowest-weight, oracle, weak-symmetry and Borcherds checks.
    Check(CheckArgs),
    /// Discrete series, unitary ranges, collapsing levels and central-charge identities.
    Tables(TablesArgs),
    /// Anticommutator identity, bound certificates and norm estimates.
    Bounds(BoundsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Controls {
    Off,
    Strict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesArg {
    Vir,
    Ns,
    N2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OpKind {
    Generator,
    Fermion,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Common {
    /// JSON file with the same keys as the flags; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Report destination.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print the report to stdout instead of the summary.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ParamArgs {
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub variant: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub kappa: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub eta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub omega: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long)]
    pub window: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    pub cutoff: Option<String>,
    /// Highest level for the oracle comparison.
    #[arg(long, allow_hyphen_values = true)]
    pub level: Option<String>,
    #[arg(long, value_enum)]
    pub controls: Option<Controls>,
}

#[derive(Debug, Clone, Args)]
pub struct TablesArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum)]
    pub series: Option<SeriesArg>,
    #[arg(long = "p-max")]
    pub p_max: Option<i64>,
    #[arg(long)]
    pub walgebra: Option<String>,
    /// An algebra name, or `all`.
    #[arg(long)]
    pub identity: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long)]
    pub role: Option<String>,
    #[arg(long, value_enum)]
    pub op: Option<OpKind>,
    #[arg(long)]
    pub species: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub cutoff: Option<String>,
}

/// Keys accepted in a `--config` file.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<String>,
    pub family: Option<String>,
    pub variant: Option<String>,
    pub kappa: Option<String>,
    pub eta: Option<String>,
    pub omega: Option<String>,
    pub window: Option<u32>,
    pub cutoff: Option<String>,
    pub level: Option<String>,
    pub controls: Option<Controls>,
    pub series: Option<SeriesArg>,
    pub p_max: Option<i64>,
    pub walgebra: Option<String>,
    pub identity: Option<String>,
    pub role: Option<String>,
    pub op: Option<OpKind>,
    pub species: Option<usize>,
    pub n: Option<String>,
    pub out: Option<PathBuf>,
}

/// A configuration problem; always exit status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

pub type Usage<T> = std::result::Result<T, UsageError>;

pub fn load_config(path: Option<&Path>, command: &str) -> Usage<RunConfig> {
    let Some(path) = path else { return Ok(RunConfig::default()) };
    let text = std::fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    let cfg: RunConfig = serde_json::from_str(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    if let Some(c) = &cfg.command {
        if c != command {
            return Err(UsageError(format!("config is for `{c}`, not `{command}`")));
        }
    }
    Ok(cfg)
}

pub fn rational(what: &str, s: &str) -> Usage<Rational> {
    parse_rational(s).map_err(|e| UsageError(format!("--{what}: {e}")))
}

pub fn half_int(what: &str, s: &str) -> Usage<HalfInt> {
    HalfInt::from_rational(&rational(what, s)?).map_err(|e| UsageError(format!("--{what}: {e}")))
}

pub fn cutoff(s: &str) -> Usage<HalfInt> {
    let c = half_int("cutoff", s)?;
    if c.is_negative() {
        return Err(UsageError(format!("--cutoff must be non-negative, got {c}")));
    }
    Ok(c)
}

pub fn role(s: &str) -> Usage<Role> {
    Role::parse(s).ok_or_else(|| UsageError(format!("unknown role `{s}`")))
}

/// Realization parameters; family defaults to ns, variant to unitary, numbers to 0.
pub fn params(args: &ParamArgs, cfg: &RunConfig) -> Usage<RealizationParams> {
    let family = args.family.as_ref().or(cfg.family.as_ref()).map_or("ns", String::as_str);
    let family = Family::parse(family).ok_or_else(|| UsageError(format!("unknown family `{family}`")))?;
    let variant = args.variant.as_ref().or(cfg.variant.as_ref()).map_or("unitary", String::as_str);
    let variant = Variant::parse(variant).ok_or_else(|| UsageError(format!("unknown variant `{variant}`")))?;
    let num = |what: &str, a: &Option<String>, c: &Option<String>| -> Usage<Rational> {
        rational(what, a.as_ref().or(c.as_ref()).map_or("0", String::as_str))
    };
    let kappa = num("kappa", &args.kappa, &cfg.kappa)?;
    let eta = num("eta", &args.eta, &cfg.eta)?;
    let omega = num("omega", &args.omega, &cfg.omega)?;
    Ok(RealizationParams::new(family, variant, kappa, eta, omega)?)
}

pub fn out_path(common: &Common, cfg: &RunConfig) -> Option<PathBuf> {
    common.out.clone().or_else(|| cfg.out.clone())
}
