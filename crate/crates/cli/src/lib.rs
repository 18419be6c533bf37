//! Command-line front end: argument parsing, subcommand dispatch, verdicts
//! and the fingerprint cache.

pub mod cache;
pub mod commands;
pub mod distinguish;

use std::path::PathBuf;
use std::time::Duration;

use clap::{Parser, Subcommand};
use pillowcase::quot::{Catalog, DEFAULT_CATALOG};
use pillowcase::{Budget, Error};
use sha2::{Digest, Sha256};

pub use distinguish::{distinguish, Verdict, VerdictKind};

/// Environment variable naming the default cache directory.
pub const CACHE_ENV: &str = "PILLOWCASE_CACHE_DIR";

#[derive(Parser, Debug)]
#[command(name = "pillowcase", version, about = "Four-punctured sphere bundles and their finite quotients")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub config: RunConfig,
}

#[derive(clap::Args, Debug, Clone)]
pub struct RunConfig {
    /// Length bound for fixed-class enumeration.
    #[arg(long = "len", global = true, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..=16))]
    pub len: u32,
    /// Power bound for fixed-class enumeration.
    #[arg(long = "powers", global = true, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..=64))]
    pub powers: u32,
    /// Largest subgroup index used by congruence quotients.
    #[arg(long = "index", global = true, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..=6))]
    pub index: u32,
    /// Target catalog file; the bundled catalog is used otherwise.
    #[arg(long = "catalog", global = true, value_name = "PATH")]
    pub catalog: Option<PathBuf>,
    /// Wall-clock budget for searches.
    #[arg(long = "budget-secs", global = true, value_parser = positive_secs)]
    pub budget_secs: Option<f64>,
    /// Emit JSON instead of text.
    #[arg(long = "json", global = true)]
    pub json: bool,
    /// Omit the timestamp from JSON output.
    #[arg(long = "stable", global = true)]
    pub stable: bool,
    /// Fingerprint cache directory.
    #[arg(long = "cache", global = true, value_name = "DIR", env = CACHE_ENV)]
    pub cache: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { len: 8, powers: 6, index: 4, catalog: None, budget_secs: None, json: false, stable: false, cache: None }
    }
}

fn positive_secs(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(format!("expected a positive number of seconds, got {s:?}")),
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normal form of a PSL(2,Z) word in s, r, R.
    Nf { word: String },
    /// Conjugacy up to inversion of two monodromies.
    Conj { first: String, second: String },
    /// Pseudo-Anosov test.
    Pa { word: String },
    /// Induced automorphism of the free group on x, y, z.
    Aut { word: String },
    /// Primitive conjugacy classes fixed by a power of the monodromy.
    Fixed { word: String },
    /// Mapping-torus presentation and first homology.
    Torus { word: String },
    /// Surjection counts of the mapping-torus group onto the catalog.
    Spectrum { word: String },
    /// A finite quotient separating two monodromies.
    Witness { first: String, second: String },
    /// Decide whether two bundles are homeomorphic.
    Distinguish { first: String, second: String },
}

impl RunConfig {
    pub fn budget(&self) -> Budget {
        match self.budget_secs {
            Some(s) => Budget::with_time(Duration::from_secs_f64(s)),
            None => Budget::unlimited(),
        }
    }

    /// The catalog and its text; the id is the sha256 of the text.
    pub fn catalog(&self) -> anyhow::Result<(Catalog, String)> {
        let text = match &self.catalog {
            Some(p) => std::fs::read_to_string(p).map_err(|e| anyhow::anyhow!("cannot read catalog {}: {e}", p.display()))?,
            None => DEFAULT_CATALOG.to_string(),
        };
        let catalog = Catalog::parse(&text, sha256_hex(text.as_bytes()))?;
        Ok((catalog, text))
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

/// Rendered output and process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

pub mod exit {
    pub const OK: i32 = 0;
    pub const NOT_PSEUDO_ANOSOV: i32 = 1;
    pub const FAILURE: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const INCONCLUSIVE: i32 = 3;
}

/// Exit code for an error escaping a subcommand.
pub fn error_code(e: &anyhow::Error) -> i32 {
    match e.downcast_ref::<Error>() {
        Some(Error::Parse { .. }) => exit::PARSE,
        Some(Error::Budget(_)) => exit::INCONCLUSIVE,
        Some(Error::NotPseudoAnosov(_)) => exit::NOT_PSEUDO_ANOSOV,
        _ => exit::FAILURE,
    }
}

pub fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    commands::dispatch(&cli.command, &cli.config)
}
