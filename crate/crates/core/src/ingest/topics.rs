//! CLEF TAR topic-file parsing.
//!
//! A topic file lists one review: a `Topic:` id line, a `Title:` line, and a
//! `Pids:` section with one PubMed id per line. Some distributions include a
//! multi-line `Query:` section between title and pids; it is skipped.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// One review descriptor: id, title, and its candidate PubMed ids in file
/// order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopicDescriptor {
    pub sr_id: String,
    pub title: String,
    pub pmids: Vec<String>,
}

/// Parse one topic file's text. `file` is used in error messages only.
pub fn parse_topic_str(text: &str, file: &str) -> Result<TopicDescriptor> {
    let mut sr_id: Option<String> = None;
    let mut title: Option<String> = None;
    let mut pmids: Vec<String> = Vec::new();
    let mut in_pids = false;

    for line in text.lines() {
        let trimmed = line.trim();
        if let Some(rest) = trimmed.strip_prefix("Topic:") {
            sr_id = Some(rest.trim().to_string());
            in_pids = false;
        } else if let Some(rest) = trimmed.strip_prefix("Title:") {
            title = Some(rest.trim().to_string());
            in_pids = false;
        } else if trimmed.strip_prefix("Pids:").is_some() {
            in_pids = true;
            // Ids may start on the same line after the marker.
            let rest = trimmed["Pids:".len()..].trim();
            if !rest.is_empty() {
                pmids.extend(rest.split_whitespace().map(str::to_string));
            }
        } else if trimmed.starts_with("Query:") {
            in_pids = false;
        } else if in_pids && !trimmed.is_empty() {
            pmids.extend(trimmed.split_whitespace().map(str::to_string));
        }
    }

    let missing = |section: &str| Error::TopicMissingSection {
        file: file.to_string(),
        section: section.to_string(),
    };
    let sr_id = sr_id.ok_or_else(|| missing("Topic"))?;
    if sr_id.is_empty() {
        return Err(Error::TopicParse {
            file: file.to_string(),
            reason: "empty Topic id".to_string(),
        });
    }
    let title = title.ok_or_else(|| missing("Title"))?;
    if pmids.is_empty() {
        return Err(missing("Pids"));
    }
    Ok(TopicDescriptor {
        sr_id,
        title,
        pmids,
    })
}

/// Parse a topic file from disk.
pub fn parse_topic_file(path: &Path) -> Result<TopicDescriptor> {
    let text = std::fs::read_to_string(path)?;
    parse_topic_str(&text, &path.display().to_string())
}
