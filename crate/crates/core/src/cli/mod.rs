//! Command-line front end.
//!
//! `run` parses argv, executes one subcommand and writes one serialized
//! [`ResultRecord`] to the output stream.  Exit codes: 0 success, 1
//! computation failure (including a failed certification), 2 usage error.
//! Only the parameter-free structure commands (`field`, `classgroup`) are
//! cached.

mod cache;
mod commands;
mod output;

pub use cache::{sha256_hex, Cache, CacheEntry, CacheKey, Cached};
pub use output::{flatten, render};

use crate::error::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

/// Bumping this invalidates every cache entry.
pub const ARTIFACT_VERSION: u32 = 1;

/// Environment variable overriding the cache directory.
pub const CACHE_ENV: &str = "EISEN_CACHE_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Debug, PartialEq, Args, Serialize, Deserialize)]
pub struct Config {
    /// Squarefree D of F = Q(√D); 1 for Q.
    #[arg(long = "D", default_value_t = 1, global = true)]
    #[serde(rename = "D")]
    pub d: i64,
    /// Level N.
    #[arg(long = "N", default_value_t = 1, global = true)]
    #[serde(rename = "N")]
    pub level: u64,
    /// Weight parameter m (k = m + 2).
    #[arg(long, default_value_t = 0, global = true)]
    pub m: u32,
    /// Twist exponent n.
    #[arg(long, default_value_t = 0, global = true, allow_hyphen_values = true)]
    pub n: i64,
    /// Truncation bound B on |N l|.
    #[arg(long, default_value_t = 1e4, global = true)]
    pub bound: f64,
    /// Working precision in bits.
    #[arg(long, default_value_t = 128, global = true)]
    pub prec: u32,
    /// Prime bound P for Euler products.
    #[arg(long = "prime-bound", default_value_t = 10_000, global = true)]
    pub prime_bound: u64,
    /// Quadrature points per axis.
    #[arg(long, default_value_t = 64, global = true)]
    pub quad: usize,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Cache directory (default: $EISEN_CACHE_DIR, else ~/.cache/eisen).
    #[arg(long = "cache-dir", global = true)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long = "no-cache", global = true)]
    pub no_cache: bool,
    /// Seed for the random Schwartz functions of the numeric commands.
    #[arg(long, default_value_t = 1, global = true)]
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            d: 1,
            level: 1,
            m: 0,
            n: 0,
            bound: 1e4,
            prec: 128,
            prime_bound: 10_000,
            quad: 64,
            format: Format::Json,
            cache_dir: None,
            no_cache: false,
            seed: 1,
        }
    }
}

impl Config {
    fn validate(&self) -> Result<(), String> {
        if self.level == 0 {
            return Err("--N must be positive".into());
        }
        if !(self.bound > 0.0) || !self.bound.is_finite() {
            return Err("--bound must be positive".into());
        }
        if self.prec == 0 || self.prime_bound < 2 || self.quad == 0 {
            return Err("--prec, --prime-bound and --quad must be positive".into());
        }
        crate::field::NumberField::new(self.d).map_err(|e| e.to_string())?;
        Ok(())
    }

    fn cache(&self) -> crate::Result<Option<Cache>> {
        if self.no_cache {
            return Ok(None);
        }
        let dir = match (&self.cache_dir, std::env::var_os(CACHE_ENV)) {
            (Some(d), _) => d.clone(),
            (None, Some(d)) => PathBuf::from(d),
            (None, None) => match std::env::var_os("HOME") {
                Some(h) => PathBuf::from(h).join(".cache").join("eisen"),
                None => PathBuf::from(".eisen-cache"),
            },
        };
        Cache::open(&dir, ARTIFACT_VERSION).map(Some)
    }
}

#[derive(Clone, Debug, PartialEq, Subcommand)]
pub enum Command {
    /// Field invariants and units.
    Field,
    /// Ray class group of conductor N·∞.
    Classgroup,
    /// Fourier transform of a Schwartz table (text format).
    Fourier {
        /// Input table file, `-` for stdin; a random S⁰ table if omitted.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// ζ_F(-k), summed over ray classes mod N.
    Zeta {
        /// k ≥ 1.
        #[arg(long)]
        neg: u32,
    },
    /// The lattice sum E(τ) for a Schwartz function.
    Eisenstein {
        #[arg(long)]
        input: Option<PathBuf>,
        /// τ as x₁,y₁[,x₂,y₂].
        #[arg(long, allow_hyphen_values = true)]
        tau: Option<String>,
        /// Scale r > 0.
        #[arg(long, default_value_t = 1.0)]
        r: f64,
    },
    /// The constant term by the bucketed lattice sum.
    ConstantTerm {
        #[arg(long)]
        input: Option<PathBuf>,
        /// Also average E over the period torus with --quad points per axis.
        #[arg(long)]
        quadrature: bool,
    },
    /// Rational reconstruction of the constant term from runs at B and 2B.
    Certify {
        #[arg(long)]
        input: Option<PathBuf>,
        /// Largest prime exponent allowed in the denominator.
        #[arg(long = "max-exp", default_value_t = 12)]
        max_exp: u32,
    },
    /// Kernel check and preimage round trip for the horospherical map.
    Horospherical {
        /// Number of random φ ∈ S⁰ in the kernel check.
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Field => "field",
            Command::Classgroup => "classgroup",
            Command::Fourier { .. } => "fourier",
            Command::Zeta { .. } => "zeta",
            Command::Eisenstein { .. } => "eisenstein",
            Command::ConstantTerm { .. } => "constant-term",
            Command::Certify { .. } => "certify",
            Command::Horospherical { .. } => "horospherical",
        }
    }
}

#[derive(Clone, Debug, Parser)]
#[command(name = "eisen", version, about = "Constant terms of Eisenstein lattice sums over Q and Q(√D)")]
pub struct Cli {
    #[command(flatten)]
    pub config: Config,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub command: String,
    pub config: Config,
    pub payload: Value,
    pub wall_time_us: u64,
    pub version: u32,
    pub cache_hit: bool,
    #[serde(default)]
    pub warnings: Vec<String>,
}

/// Outcome of one command before serialization.
pub struct Outcome {
    pub payload: Value,
    pub cache_hit: bool,
    pub warnings: Vec<String>,
    /// The command ran but its check failed (exit 1 with the payload).
    pub failed: bool,
}

impl Outcome {
    fn ok(payload: Value) -> Self {
        Outcome {
            payload,
            cache_hit: false,
            warnings: Vec::new(),
            failed: false,
        }
    }
}

/// Runs a parsed command.
pub fn execute(cli: &Cli) -> crate::Result<Outcome> {
    commands::execute(&cli.config, &cli.command)
}

/// Parses argv, runs, writes the record to `out` and diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{}", text);
            } else {
                let _ = write!(err, "{}", text);
            }
            return if code == 0 { 0 } else { 2 };
        }
    };
    if let Err(msg) = cli.config.validate() {
        let _ = writeln!(err, "error: {}", msg);
        return 2;
    }
    let start = Instant::now();
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e);
            return match e {
                Error::InvalidInput(_) => 2,
                _ => 1,
            };
        }
    };
    let record = ResultRecord {
        command: cli.command.name().to_string(),
        config: cli.config.clone(),
        payload: outcome.payload,
        wall_time_us: start.elapsed().as_micros() as u64,
        version: ARTIFACT_VERSION,
        cache_hit: outcome.cache_hit,
        warnings: outcome.warnings,
    };
    for w in &record.warnings {
        let _ = writeln!(err, "warning: {}", w);
    }
    if writeln!(out, "{}", render(&record, cli.config.format)).is_err() {
        return 1;
    }
    if outcome.failed {
        let _ = writeln!(err, "error: {} check failed", record.command);
        return 1;
    }
    0
}
