//! Settings read from a flat TOML file.
//!
//! ```toml
//! default_order = 40
//! format = "json"
//! jobs = "auto"          # or a worker count
//! entry1_samples = ["zeta", "zeta^5", "alpha"]
//! entry2_samples = ["zeta^2"]
//! ```
//!
//! The path comes from `--config` or, failing that, `MOCK_THETA_CONFIG`.
//! Command-line flags win over file values.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use mock_theta::verify::{Sample, Samples, Status};
use serde::Deserialize;

use crate::expr::{eval_mono, parse};

pub const CONFIG_ENV: &str = "MOCK_THETA_CONFIG";
pub const MIN_ORDER: i64 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Jobs {
    #[default]
    Auto,
    Count(usize),
}

impl std::str::FromStr for Jobs {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "auto" {
            return Ok(Jobs::Auto);
        }
        match s.parse::<usize>() {
            Ok(0) | Err(_) => Err(format!("expected a positive worker count or \"auto\", got {s:?}")),
            Ok(k) => Ok(Jobs::Count(k)),
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    default_order: Option<i64>,
    format: Option<Format>,
    jobs: Option<toml::Value>,
    entry1_samples: Option<Vec<String>>,
    entry2_samples: Option<Vec<String>>,
}

#[derive(Clone, Debug)]
pub struct Config {
    /// Overrides every check's own order when set.
    pub default_order: Option<i64>,
    pub format: Format,
    pub jobs: Jobs,
    pub samples: Samples,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            default_order: None,
            format: Format::Text,
            jobs: Jobs::Auto,
            samples: Samples::default(),
        }
    }
}

/// Parses sample expressions such as `zeta^5` or `zeta*q`; each is expected to pass.
pub fn parse_samples(list: &[String]) -> anyhow::Result<Vec<(Sample, Status)>> {
    if list.is_empty() {
        bail!("sample list must be nonempty");
    }
    list.iter()
        .map(|s| {
            let e = parse(s).with_context(|| format!("sample {s:?}"))?;
            let m = eval_mono(&e).with_context(|| format!("sample {s:?}"))?;
            Ok((Sample::new(s.trim(), m), Status::Pass))
        })
        .collect()
}

pub fn check_order(n: i64) -> anyhow::Result<i64> {
    if n < MIN_ORDER {
        bail!("order must be at least {MIN_ORDER}, got {n}");
    }
    Ok(n)
}

impl Config {
    pub fn from_toml(src: &str) -> anyhow::Result<Self> {
        let raw: RawConfig = toml::from_str(src)?;
        let mut cfg = Config::default();
        if let Some(n) = raw.default_order {
            cfg.default_order = Some(check_order(n)?);
        }
        if let Some(f) = raw.format {
            cfg.format = f;
        }
        if let Some(j) = raw.jobs {
            cfg.jobs = match j {
                toml::Value::String(s) => s.parse().map_err(anyhow::Error::msg)?,
                toml::Value::Integer(k) => k.to_string().parse().map_err(anyhow::Error::msg)?,
                other => bail!("jobs: expected a count or \"auto\", got {other}"),
            };
        }
        if let Some(l) = raw.entry1_samples {
            cfg.samples.entry1 = parse_samples(&l).context("entry1_samples")?;
        }
        if let Some(l) = raw.entry2_samples {
            cfg.samples.entry2 = parse_samples(&l).context("entry2_samples")?;
        }
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> anyhow::Result<Self> {
        let src = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        Config::from_toml(&src).with_context(|| format!("in config {}", path.display()))
    }

    /// The explicit path if given, else the environment variable, else defaults.
    pub fn load(explicit: Option<&Path>) -> anyhow::Result<Self> {
        let path: Option<PathBuf> = explicit
            .map(Path::to_path_buf)
            .or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
        match path {
            Some(p) => Config::from_path(&p),
            None => Ok(Config::default()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_file() {
        let c = Config::from_toml(
            "default_order = 20\nformat = \"json\"\njobs = 2\nentry1_samples = [\"zeta\", \"zeta*q\"]\n",
        )
        .unwrap();
        assert_eq!(c.default_order, Some(20));
        assert_eq!(c.format, Format::Json);
        assert_eq!(c.jobs, Jobs::Count(2));
        assert_eq!(c.samples.entry1.len(), 2);
        assert_eq!(c.samples.entry1[1].0.value.exp(), 1);
    }

    #[test]
    fn rejects_bad_values() {
        assert!(Config::from_toml("default_order = 5").is_err());
        assert!(Config::from_toml("entry2_samples = []").is_err());
        assert!(Config::from_toml("colour = 1").is_err());
        assert!(Config::from_toml("jobs = 0").is_err());
    }
}
