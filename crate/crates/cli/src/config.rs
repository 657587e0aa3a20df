//! Run configuration with precedence: flags > environment (PCAT_*) >
//! config file (key=value lines) > defaults.

use std::path::{Path, PathBuf};

use crate::CliError;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Text,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "text" => Ok(Format::Text),
            "json" | "structured" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?} (expected text or json)")),
        }
    }
}

/// One layer of settings; `None` means "not set at this layer".
#[derive(Default, Clone, Debug)]
pub struct ConfigLayer {
    pub degree: Option<usize>,
    pub bound: Option<usize>,
    pub ambient: Option<usize>,
    pub budget: Option<u64>,
    pub format: Option<Format>,
    pub cache_dir: Option<PathBuf>,
}

impl ConfigLayer {
    fn or(self, lower: ConfigLayer) -> ConfigLayer {
        ConfigLayer {
            degree: self.degree.or(lower.degree),
            bound: self.bound.or(lower.bound),
            ambient: self.ambient.or(lower.ambient),
            budget: self.budget.or(lower.budget),
            format: self.format.or(lower.format),
            cache_dir: self.cache_dir.or(lower.cache_dir),
        }
    }

    pub fn from_env() -> Result<ConfigLayer, CliError> {
        fn parse_var<T: std::str::FromStr>(name: &str) -> Result<Option<T>, CliError>
        where
            T::Err: std::fmt::Display,
        {
            match std::env::var(name) {
                Ok(v) => v
                    .parse::<T>()
                    .map(Some)
                    .map_err(|e| CliError::usage(format!("bad {name}={v:?}: {e}"))),
                Err(_) => Ok(None),
            }
        }
        Ok(ConfigLayer {
            degree: parse_var("PCAT_DEGREE")?,
            bound: parse_var("PCAT_BOUND")?,
            ambient: parse_var("PCAT_AMBIENT")?,
            budget: parse_var("PCAT_BUDGET")?,
            format: parse_var("PCAT_FORMAT")?,
            cache_dir: std::env::var("PCAT_CACHE").ok().map(PathBuf::from),
        })
    }

    pub fn from_file(path: &Path) -> Result<ConfigLayer, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read config {path:?}: {e}")))?;
        let mut layer = ConfigLayer::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::usage(format!(
                    "config {path:?} line {}: expected key=value",
                    lineno + 1
                )));
            };
            let (key, value) = (key.trim(), value.trim());
            let bad = |e: &dyn std::fmt::Display| {
                CliError::usage(format!("config {path:?} line {}: {e}", lineno + 1))
            };
            match key {
                "degree" => layer.degree = Some(value.parse().map_err(|e| bad(&e))?),
                "bound" => layer.bound = Some(value.parse().map_err(|e| bad(&e))?),
                "ambient" => layer.ambient = Some(value.parse().map_err(|e| bad(&e))?),
                "budget" => layer.budget = Some(value.parse().map_err(|e| bad(&e))?),
                "format" => layer.format = Some(value.parse().map_err(|e| bad(&e))?),
                "cache-dir" => layer.cache_dir = Some(PathBuf::from(value)),
                other => {
                    return Err(CliError::usage(format!(
                        "config {path:?} line {}: unknown key {other:?}",
                        lineno + 1
                    )))
                }
            }
        }
        Ok(layer)
    }
}

/// Fully resolved configuration.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub degree: usize,
    /// Explicit bound, when set; otherwise derived as degree + slack.
    bound: Option<usize>,
    pub ambient: usize,
    pub budget: u64,
    pub format: Format,
    pub cache_dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn resolve(
        flags: ConfigLayer,
        config_path: Option<&Path>,
    ) -> Result<RunConfig, CliError> {
        let mut merged = flags.or(ConfigLayer::from_env()?);
        let file_path = config_path
            .map(PathBuf::from)
            .or_else(|| {
                let default = PathBuf::from("pcat.conf");
                default.exists().then_some(default)
            });
        if let Some(path) = file_path {
            merged = merged.or(ConfigLayer::from_file(&path)?);
        }
        let degree = merged.degree.unwrap_or(pcat_core::DEFAULT_DEGREE);
        let cfg = RunConfig {
            degree,
            bound: merged.bound,
            ambient: merged.ambient.unwrap_or(3),
            budget: merged.budget.unwrap_or(pcat_core::DEFAULT_BUDGET),
            format: merged.format.unwrap_or(Format::Text),
            cache_dir: merged.cache_dir,
        };
        if cfg.budget == 0 {
            return Err(CliError::usage("budget must be positive"));
        }
        if let Some(b) = cfg.bound {
            if cfg.degree > b {
                return Err(CliError::usage(format!(
                    "degree {} exceeds bound {b}",
                    cfg.degree
                )));
            }
        }
        Ok(cfg)
    }

    /// The saturation bound for a closure at the given degree.
    pub fn bound_for(&self, degree: usize) -> usize {
        match self.bound {
            Some(b) => b.max(degree),
            None => degree + pcat_core::DEFAULT_BOUND_SLACK,
        }
    }
}
