//! Optional `key = value` configuration file.
//!
//! Lookup order: `--config PATH`, then the `TRIBOKIT_CONFIG` environment
//! variable. Flags on the command line override anything read here.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use tribokit::analytic::{DEFAULT_PRECISION, MIN_PRECISION};

pub const CONFIG_ENV: &str = "TRIBOKIT_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Plain,
    Json,
    Csv,
    Bfile,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "plain" => Ok(OutputFormat::Plain),
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "bfile" => Ok(OutputFormat::Bfile),
            other => Err(format!(
                "unknown output format `{other}` (plain, json, csv, bfile)"
            )),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Plain => "plain",
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
            OutputFormat::Bfile => "bfile",
        })
    }
}

/// Inclusive index range written `lo:hi`, or `hi` for `0:hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexRange {
    pub lo: i64,
    pub hi: i64,
}

impl FromStr for IndexRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| format!("invalid index `{t}` in range `{s}`"))
        };
        let (lo, hi) = match s.split_once(':') {
            Some((a, b)) => (parse(a)?, parse(b)?),
            None => (0, parse(s)?),
        };
        if lo > hi {
            return Err(format!("empty range `{s}` (lo > hi)"));
        }
        Ok(IndexRange { lo, hi })
    }
}

impl fmt::Display for IndexRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliConfig {
    pub default_range: IndexRange,
    pub precision: u32,
    pub fixture_dir: PathBuf,
    pub output_format: OutputFormat,
    pub oeis_endpoint: String,
}

impl Default for CliConfig {
    fn default() -> Self {
        CliConfig {
            default_range: IndexRange { lo: 0, hi: 50 },
            precision: DEFAULT_PRECISION,
            fixture_dir: PathBuf::from("fixtures"),
            output_format: OutputFormat::Plain,
            oeis_endpoint: "https://oeis.org".to_string(),
        }
    }
}

impl CliConfig {
    /// Applies `key = value` lines on top of the defaults.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut cfg = CliConfig::default();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("config line {}: expected `key = value`", k + 1))?;
            let value = value.trim();
            let ctx = |e: String| format!("config line {}: {e}", k + 1);
            match key.trim() {
                "default_range" => cfg.default_range = value.parse().map_err(ctx)?,
                "precision" => {
                    cfg.precision = value
                        .parse()
                        .map_err(|_| ctx(format!("invalid precision `{value}`")))?
                }
                "fixture_dir" => cfg.fixture_dir = PathBuf::from(value),
                "output_format" => cfg.output_format = value.parse().map_err(ctx)?,
                "oeis_endpoint" => cfg.oeis_endpoint = value.trim_end_matches('/').to_string(),
                other => return Err(ctx(format!("unknown key `{other}`"))),
            }
        }
        if cfg.precision < MIN_PRECISION {
            return Err(format!(
                "config precision must be at least {MIN_PRECISION}, got {}",
                cfg.precision
            ));
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        CliConfig::parse(&text)
    }

    /// Config from an explicit path, else from the environment, else defaults.
    pub fn resolve(explicit: Option<&Path>) -> Result<Self, String> {
        match explicit {
            Some(p) => CliConfig::load(p),
            None => match std::env::var_os(CONFIG_ENV) {
                Some(p) if !p.is_empty() => CliConfig::load(Path::new(&p)),
                _ => Ok(CliConfig::default()),
            },
        }
    }
}
