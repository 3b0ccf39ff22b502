//! Runtime configuration file support. A small TOML file can set the
//! splitter options that the command line also exposes; explicit
//! command-line flags win over file values.
//!
//! ```toml
//! extended_patterns = true
//! lexicon_dir = "/etc/condsplit/lexicons"
//! weak_cue_policy = "consequence"   # or "action"
//! ```

use crate::splitter::{SplitterOptions, WeakCuePolicy};
use serde::Deserialize;
use std::path::{Path, PathBuf};

/// Parsed configuration file with defaults applied.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FileConfig {
    /// Enable the non-lexical condition patterns (imperative+and,
    /// interrogative, leading for-phrase). Off by default.
    pub extended_patterns: bool,
    /// Directory of lexicon override files; embedded lexicons are used
    /// for any file not present there.
    pub lexicon_dir: Option<PathBuf>,
    /// Label given to weak-cue resultants ("consequence" or "action").
    pub weak_cue_policy: WeakCuePolicy,
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config file: {0}")]
    Io(#[from] std::io::Error),
    #[error("config file is not valid TOML: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("weak_cue_policy must be \"consequence\" or \"action\", got {0:?}")]
    BadPolicy(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    extended_patterns: Option<bool>,
    lexicon_dir: Option<PathBuf>,
    weak_cue_policy: Option<String>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let raw: RawConfig = toml::from_str(text)?;
        let weak_cue_policy = match raw.weak_cue_policy.as_deref() {
            None | Some("consequence") => WeakCuePolicy::Consequence,
            Some("action") => WeakCuePolicy::Action,
            Some(other) => return Err(ConfigError::BadPolicy(other.to_string())),
        };
        Ok(FileConfig {
            extended_patterns: raw.extended_patterns.unwrap_or(false),
            lexicon_dir: raw.lexicon_dir,
            weak_cue_policy,
        })
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn splitter_options(&self) -> SplitterOptions {
        SplitterOptions {
            extended_patterns: self.extended_patterns,
            weak_cue_policy: self.weak_cue_policy,
        }
    }
}
