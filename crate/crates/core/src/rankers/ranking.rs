//! The ranking produced for one seed over one candidate collection.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::{Result, Score};

/// One ranked entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoredDoc {
    pub doc_id: String,
    pub score: Score,
}

/// Ordered ranking: descending score, ties by ascending document id. The
/// seed document never appears among the entries.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Ranking {
    pub sr_id: String,
    pub seed_id: String,
    entries: Vec<ScoredDoc>,
}

impl Ranking {
    /// Sort raw scores into a ranking. The caller must already have excluded
    /// the seed.
    pub fn from_scores(
        sr_id: impl Into<String>,
        seed_id: impl Into<String>,
        mut scores: Vec<(String, Score)>,
    ) -> Self {
        scores.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        Self {
            sr_id: sr_id.into(),
            seed_id: seed_id.into(),
            entries: scores
                .into_iter()
                .map(|(doc_id, score)| ScoredDoc { doc_id, score })
                .collect(),
        }
    }

    pub fn entries(&self) -> &[ScoredDoc] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Ranked ids, best first.
    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.doc_id.as_str())
    }

    /// Write TREC run lines: `sr_id Q0 doc_id rank score run_tag`.
    pub fn write_trec_run(&self, mut w: impl Write, run_tag: &str) -> Result<()> {
        for (i, e) in self.entries.iter().enumerate() {
            writeln!(
                w,
                "{} Q0 {} {} {:.6} {}",
                self.sr_id,
                e.doc_id,
                i + 1,
                e.score,
                run_tag
            )?;
        }
        Ok(())
    }
}
