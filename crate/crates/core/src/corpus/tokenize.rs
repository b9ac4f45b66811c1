//! Deterministic tokenization: lowercase, split on non-alphanumeric
//! boundaries, optional stoplist. No stemming.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A small English stoplist; disabled unless the config opts in.
const STOP_WORDS: &[&str] = &[
    "a", "an", "and", "are", "as", "at", "be", "but", "by", "for", "from", "has", "have", "in",
    "is", "it", "its", "of", "on", "or", "that", "the", "this", "to", "was", "were", "which",
    "with",
];

/// The built-in stoplist as an owned set.
pub fn builtin_stoplist() -> BTreeSet<String> {
    STOP_WORDS.iter().map(|s| s.to_string()).collect()
}

/// Tokenizer settings. Echoed verbatim into every report so a run can be
/// reproduced from its outputs alone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenizerConfig {
    /// Drop tokens found in `stopwords`.
    pub remove_stopwords: bool,
    /// Active stoplist; ignored when `remove_stopwords` is false.
    pub stopwords: BTreeSet<String>,
}

impl Default for TokenizerConfig {
    fn default() -> Self {
        Self {
            remove_stopwords: false,
            stopwords: BTreeSet::new(),
        }
    }
}

impl TokenizerConfig {
    /// Config with the built-in English stoplist enabled.
    pub fn with_builtin_stoplist() -> Self {
        Self {
            remove_stopwords: true,
            stopwords: builtin_stoplist(),
        }
    }

    /// Serialize as `key=value` lines for the report metadata block.
    pub fn to_kv_string(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "remove_stopwords={}", self.remove_stopwords);
        let words: Vec<&str> = self.stopwords.iter().map(String::as_str).collect();
        let _ = writeln!(out, "stopwords={}", words.join(","));
        out
    }

    /// Parse the `key=value` form written by [`Self::to_kv_string`].
    pub fn from_kv_str(text: &str) -> Result<Self> {
        let mut config = Self::default();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::InvalidConfig(format!("tokenizer config line {}: missing '='", idx + 1))
            })?;
            match key.trim() {
                "remove_stopwords" => {
                    config.remove_stopwords = value.trim().parse().map_err(|_| {
                        Error::InvalidConfig(format!("bad boolean `{value}` for remove_stopwords"))
                    })?;
                }
                "stopwords" => {
                    config.stopwords = value
                        .split(',')
                        .map(str::trim)
                        .filter(|w| !w.is_empty())
                        .map(str::to_string)
                        .collect();
                }
                other => {
                    return Err(Error::InvalidConfig(format!(
                        "unknown tokenizer config key `{other}`"
                    )));
                }
            }
        }
        Ok(config)
    }
}

/// Lowercase `text` and split on non-alphanumeric boundaries; drop stopwords
/// when the config says so. Empty input yields an empty sequence.
pub fn tokenize(text: &str, config: &TokenizerConfig) -> Vec<String> {
    text.to_lowercase()
        .split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .filter(|t| !(config.remove_stopwords && config.stopwords.contains(*t)))
        .map(str::to_string)
        .collect()
}
