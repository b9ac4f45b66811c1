//! Relevance-judgment (qrels) parsing: whitespace-separated
//! `topic iteration doc_id label` lines with binary labels.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Binary relevance label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Label {
    Relevant,
    NonRelevant,
}

impl Label {
    pub fn is_relevant(self) -> bool {
        matches!(self, Label::Relevant)
    }
}

/// (topic id, document id) key into a qrels map.
pub type QrelKey = (String, String);

/// Parse qrels text. Errors carry the 1-based line number.
pub fn parse_qrels_str(text: &str) -> Result<BTreeMap<QrelKey, Label>> {
    let mut map = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(Error::QrelsParse {
                line: idx + 1,
                reason: format!("expected 4 fields, found {}", fields.len()),
            });
        }
        let label = match fields[3] {
            "0" => Label::NonRelevant,
            "1" => Label::Relevant,
            other => {
                return Err(Error::QrelsParse {
                    line: idx + 1,
                    reason: format!("non-binary label `{other}`"),
                })
            }
        };
        map.insert((fields[0].to_string(), fields[2].to_string()), label);
    }
    Ok(map)
}

/// Parse a qrels file from disk.
pub fn parse_qrels(path: &Path) -> Result<BTreeMap<QrelKey, Label>> {
    let text = std::fs::read_to_string(path)?;
    parse_qrels_str(&text)
}
