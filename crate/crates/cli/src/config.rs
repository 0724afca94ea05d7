//! Settings resolution: flags > environment > config file > defaults.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::CliError;
use crate::output::Format;

pub const ENV_CONFIG: &str = "BELLKIT_CONFIG";
pub const ENV_FORMAT: &str = "BELLKIT_FORMAT";
pub const ENV_TIMEOUT_MS: &str = "BELLKIT_TIMEOUT_MS";
pub const ENV_FIXTURES: &str = "BELLKIT_FIXTURES";
/// Overrides the OEIS base URL (default `https://oeis.org`).
pub const ENV_OEIS_URL: &str = "BELLKIT_OEIS_URL";
/// Directory where live OEIS responses are cached.
pub const ENV_CACHE_DIR: &str = "BELLKIT_CACHE_DIR";

pub const DEFAULT_OEIS_URL: &str = "https://oeis.org";
pub const DEFAULT_TIMEOUT_MS: u64 = 10_000;

/// Contents of the optional TOML config file. Every key is optional.
#[derive(Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub format: Option<String>,
    pub timeout_ms: Option<u64>,
    pub fixtures: Option<PathBuf>,
    pub oeis_url: Option<String>,
    pub cache_dir: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
    }
}

/// Values given on the command line; `None` means "not given".
#[derive(Debug, Default, Clone)]
pub struct FlagValues {
    pub config: Option<PathBuf>,
    pub format: Option<Format>,
    pub timeout_ms: Option<u64>,
    pub fixtures: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub format: Format,
    pub timeout_ms: u64,
    pub fixtures: Option<PathBuf>,
    pub oeis_url: String,
    pub cache_dir: Option<PathBuf>,
}

impl Settings {
    /// Resolves settings; `env` is a lookup so tests need not touch the process environment.
    pub fn resolve(flags: &FlagValues, env: &dyn Fn(&str) -> Option<String>) -> Result<Self, CliError> {
        let config_path = flags
            .config
            .clone()
            .or_else(|| env(ENV_CONFIG).map(PathBuf::from));
        let file = match config_path {
            Some(p) => FileConfig::load(&p)?,
            None => FileConfig::default(),
        };

        let format = match flags.format {
            Some(f) => f,
            None => match env(ENV_FORMAT).or(file.format) {
                Some(s) => s.parse()?,
                None => Format::Text,
            },
        };
        let timeout_ms = match flags.timeout_ms {
            Some(t) => t,
            None => match env(ENV_TIMEOUT_MS) {
                Some(s) => s
                    .parse()
                    .map_err(|_| CliError::Usage(format!("{ENV_TIMEOUT_MS} is not an integer: {s}")))?,
                None => file.timeout_ms.unwrap_or(DEFAULT_TIMEOUT_MS),
            },
        };
        let fixtures = flags
            .fixtures
            .clone()
            .or_else(|| env(ENV_FIXTURES).map(PathBuf::from))
            .or(file.fixtures);
        let oeis_url = env(ENV_OEIS_URL)
            .or(file.oeis_url)
            .unwrap_or_else(|| DEFAULT_OEIS_URL.to_string());
        let cache_dir = env(ENV_CACHE_DIR).map(PathBuf::from).or(file.cache_dir);

        Ok(Settings {
            format,
            timeout_ms,
            fixtures,
            oeis_url,
            cache_dir,
        })
    }
}
