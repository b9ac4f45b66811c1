//! Average precision and per-review ranking quality.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::ingest::SystematicReview;
use crate::rankers::{Ranking, SeedRanker};
use crate::{Error, Result, Score};

/// Average precision of a ranking against a relevant set: the mean of the
/// precision values at the rank of each relevant document found, normalized
/// by the number of relevant documents present in the ranking.
pub fn average_precision(ranking: &Ranking, relevant: &BTreeSet<String>) -> Result<Score> {
    let mut hits = 0u64;
    let mut sum = 0.0;
    for (i, id) in ranking.ids().enumerate() {
        if relevant.contains(id) {
            hits += 1;
            sum += hits as Score / (i + 1) as Score;
        }
    }
    if hits == 0 {
        return Err(Error::NoRelevantRanked);
    }
    Ok(sum / hits as Score)
}

/// Ranking quality of one review under one ranker: every relevant document
/// serves as the seed once, scored by average precision against the
/// remaining relevant documents, then averaged.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QualityScore {
    pub sr_id: String,
    pub ranker: String,
    pub per_seed_ap: BTreeMap<String, Score>,
    pub mean_ap: Score,
    /// Seeds the ranker could not use (e.g. no embeddable term).
    pub skipped_seeds: Vec<String>,
}

/// Compute the ranking quality of `sr` under `ranker`. Needs at least two
/// relevant documents so every seed leaves a nonempty target set.
pub fn sr_quality(sr: &SystematicReview, ranker: &dyn SeedRanker) -> Result<QualityScore> {
    sr.require_relevant(2)?;
    let mut per_seed_ap = BTreeMap::new();
    let mut skipped = Vec::new();
    for seed_id in sr.relevant_ids() {
        let seed = sr
            .candidates()
            .get(seed_id)
            .ok_or_else(|| Error::UnknownDocument {
                sr_id: sr.sr_id().to_string(),
                doc_id: seed_id.clone(),
            })?;
        let targets: BTreeSet<String> = sr
            .relevant_ids()
            .iter()
            .filter(|id| *id != seed_id)
            .cloned()
            .collect();
        match ranker.rank(seed, sr.candidates()) {
            Ok(ranking) => {
                per_seed_ap.insert(seed_id.clone(), average_precision(&ranking, &targets)?);
            }
            Err(Error::UnusableSeed) => skipped.push(seed_id.clone()),
            Err(e) => return Err(e),
        }
    }
    if per_seed_ap.is_empty() {
        return Err(Error::UnusableSeed);
    }
    let mean_ap = per_seed_ap.values().sum::<Score>() / per_seed_ap.len() as Score;
    Ok(QualityScore {
        sr_id: sr.sr_id().to_string(),
        ranker: ranker.name().to_string(),
        per_seed_ap,
        mean_ap,
        skipped_seeds: skipped,
    })
}
