use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use permstat::DEFAULT_ENUMERATION_CAP;
use serde::Deserialize;

pub const DEFAULT_FILE: &str = "permstat.toml";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => bail!("unknown output format {other:?} (expected csv or json)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parallelism {
    Auto,
    Workers(usize),
}

impl std::str::FromStr for Parallelism {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "auto" | "" => Ok(Parallelism::Auto),
            n => match n.parse::<usize>() {
                Ok(0) | Err(_) => bail!("parallelism must be \"auto\" or a positive worker count, got {n:?}"),
                Ok(k) => Ok(Parallelism::Workers(k)),
            },
        }
    }
}

impl<'de> Deserialize<'de> for Parallelism {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Count(usize),
            Text(String),
        }
        let text = match Raw::deserialize(d)? {
            Raw::Count(n) => n.to_string(),
            Raw::Text(s) => s,
        };
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub enumeration_cap: usize,
    pub cache_dir: Option<PathBuf>,
    pub output_format: OutputFormat,
    pub parallelism: Parallelism,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            cache_dir: None,
            output_format: OutputFormat::Csv,
            parallelism: Parallelism::Auto,
        }
    }
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(toml::from_str(text)?)
    }

    /// Reads `path`, or `permstat.toml` in the working directory when it
    /// exists, then applies the `PERMSTAT_*` environment overrides.
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let mut cfg = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                Self::parse(&text).with_context(|| format!("parsing {}", p.display()))?
            }
            None if Path::new(DEFAULT_FILE).is_file() => {
                let text = std::fs::read_to_string(DEFAULT_FILE)?;
                Self::parse(&text).with_context(|| format!("parsing {DEFAULT_FILE}"))?
            }
            None => Self::default(),
        };
        cfg.apply_env(|k| std::env::var(k).ok())?;
        Ok(cfg)
    }

    pub fn apply_env(&mut self, get: impl Fn(&str) -> Option<String>) -> Result<()> {
        if let Some(v) = get("PERMSTAT_CAP") {
            self.enumeration_cap = v.trim().parse().with_context(|| format!("PERMSTAT_CAP={v:?}"))?;
        }
        if let Some(v) = get("PERMSTAT_CACHE_DIR") {
            self.cache_dir = (!v.is_empty()).then(|| PathBuf::from(v));
        }
        if let Some(v) = get("PERMSTAT_PARALLELISM") {
            self.parallelism = v.parse().context("PERMSTAT_PARALLELISM")?;
        }
        if let Some(v) = get("PERMSTAT_OUTPUT_FORMAT") {
            self.output_format = v.parse()?;
        }
        Ok(())
    }

    pub fn init_thread_pool(&self) -> Result<()> {
        if let Parallelism::Workers(k) = self.parallelism {
            rayon::ThreadPoolBuilder::new().num_threads(k).build_global()?;
        }
        Ok(())
    }
}
