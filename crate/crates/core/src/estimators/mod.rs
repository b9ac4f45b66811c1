//! Ranking-quality estimators.
//!
//! Each estimator maps one systematic review (its seed documents, candidate
//! collection, and optional resources) to a single real value whose ordering
//! across reviews predicts their ranking quality. Seed-based estimators
//! average over a capped random sample of seed pairs; collection-level
//! estimators ignore the seeds.

mod broadness;
mod collection;
mod qpp;

pub use broadness::{tb_parts, tb_variant, topic_broadness, SeedPair, TbParts, TbVariant};
pub use collection::{
    coll_clarity, docsim_family, kl_divergence_log2, num_clusters, DocSimConfig, DocSimStats,
    NumClustersConfig,
};
pub use qpp::{qpp_measure, QppMeasure};

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::corpus::LanguageModel;
use crate::ingest::{EmbeddingTable, SystematicReview};
use crate::math::stats;
use crate::rng;
use crate::{Error, Result, Score};

/// Default cap on sampled seed pairs (and triples) per review.
pub const DEFAULT_PAIR_CAP: usize = 30;

/// Per-review output of one estimator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateRecord {
    pub sr_id: String,
    pub estimator: String,
    pub per_pair_values: Vec<Score>,
    pub mean: Score,
    pub variance: Score,
    pub n_pairs: usize,
    pub rng_seed: u64,
}

impl EstimateRecord {
    /// Build from per-pair values; mean and population variance are derived
    /// so they always stay recomputable from the stored values.
    pub fn from_values(
        sr_id: impl Into<String>,
        estimator: impl Into<String>,
        values: Vec<Score>,
        rng_seed: u64,
    ) -> Self {
        let mean = stats::mean(&values);
        let variance = stats::population_variance(&values);
        Self {
            sr_id: sr_id.into(),
            estimator: estimator.into(),
            n_pairs: values.len(),
            per_pair_values: values,
            mean,
            variance,
            rng_seed,
        }
    }
}

/// Every estimator the toolkit knows, including the proposed measure and its
/// two ablations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EstimatorKind {
    TopicBroadness,
    TbNoSeedSim,
    TbNoCandSim,
    Qpp(QppMeasure),
    CollSize,
    CollClarity,
    NumClusters,
    AvgDocSim,
    SumDocSim,
    MaxDocSim,
    StdevDocSim,
}

impl EstimatorKind {
    /// Proposed measure, ten QPP baselines, seven collection baselines.
    pub fn all() -> Vec<EstimatorKind> {
        let mut v = vec![EstimatorKind::TopicBroadness];
        v.extend(QppMeasure::ALL.into_iter().map(EstimatorKind::Qpp));
        v.extend([
            EstimatorKind::CollSize,
            EstimatorKind::CollClarity,
            EstimatorKind::NumClusters,
            EstimatorKind::AvgDocSim,
            EstimatorKind::SumDocSim,
            EstimatorKind::MaxDocSim,
            EstimatorKind::StdevDocSim,
        ]);
        v
    }

    /// [`Self::all`] plus the two ablation variants.
    pub fn all_with_ablations() -> Vec<EstimatorKind> {
        let mut v = Self::all();
        v.push(EstimatorKind::TbNoSeedSim);
        v.push(EstimatorKind::TbNoCandSim);
        v
    }

    pub fn name(self) -> &'static str {
        match self {
            EstimatorKind::TopicBroadness => "TB",
            EstimatorKind::TbNoSeedSim => "TB-noSeedSim",
            EstimatorKind::TbNoCandSim => "TB-noCandSim",
            EstimatorKind::Qpp(m) => m.name(),
            EstimatorKind::CollSize => "collSize",
            EstimatorKind::CollClarity => "collClarity",
            EstimatorKind::NumClusters => "numClusters",
            EstimatorKind::AvgDocSim => "avgDocSim",
            EstimatorKind::SumDocSim => "sumDocSim",
            EstimatorKind::MaxDocSim => "maxDocSim",
            EstimatorKind::StdevDocSim => "stdevDocSim",
        }
    }

    /// Whether the estimator consumes seed pairs (vs. the collection alone).
    pub fn uses_seeds(self) -> bool {
        matches!(
            self,
            EstimatorKind::TopicBroadness
                | EstimatorKind::TbNoSeedSim
                | EstimatorKind::TbNoCandSim
                | EstimatorKind::Qpp(_)
        )
    }

    /// Whether the estimator needs a word-embedding table.
    pub fn needs_embeddings(self) -> bool {
        matches!(
            self,
            EstimatorKind::NumClusters
                | EstimatorKind::AvgDocSim
                | EstimatorKind::SumDocSim
                | EstimatorKind::MaxDocSim
                | EstimatorKind::StdevDocSim
        )
    }

    /// Whether the estimator needs the background language model.
    pub fn needs_background(self) -> bool {
        matches!(self, EstimatorKind::CollClarity)
    }
}

impl fmt::Display for EstimatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EstimatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::all_with_ablations()
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownEstimator(s.to_string()))
    }
}

/// The seed pairs sampled for one review, shared by every seed-based
/// estimator so their per-pair values stay comparable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSample {
    pub pairs: Vec<(String, String)>,
    pub rng_seed: u64,
}

/// Enumerate all unordered relevant-document pairs; when more than `cap`
/// exist, sample `cap` of them without replacement.
pub fn sample_seed_pairs(
    sr: &SystematicReview,
    cap: usize,
    master_seed: u64,
) -> Result<PairSample> {
    sr.require_relevant(2)?;
    let ids: Vec<&String> = sr.relevant_ids().iter().collect();
    let mut pairs: Vec<(String, String)> = Vec::new();
    for i in 0..ids.len() {
        for j in (i + 1)..ids.len() {
            pairs.push((ids[i].clone(), ids[j].clone()));
        }
    }
    let rng_seed = rng::derive_seed(master_seed, sr.sr_id(), "pairs");
    if pairs.len() > cap {
        let mut rng = rng::stream(master_seed, sr.sr_id(), "pairs");
        let (sampled, _) = pairs.partial_shuffle(&mut rng, cap);
        let mut sampled = sampled.to_vec();
        sampled.sort();
        pairs = sampled;
    }
    Ok(PairSample { pairs, rng_seed })
}

/// The seed triples sampled for one review.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleSample {
    pub triples: Vec<(String, String, String)>,
    pub rng_seed: u64,
}

/// Enumerate all unordered relevant-document triples, sampling down to `cap`
/// when needed.
pub fn sample_seed_triples(
    sr: &SystematicReview,
    cap: usize,
    master_seed: u64,
) -> Result<TripleSample> {
    sr.require_relevant(3)?;
    let ids: Vec<&String> = sr.relevant_ids().iter().collect();
    let mut triples: Vec<(String, String, String)> = Vec::new();
    for i in 0..ids.len() {
        for j in (i + 1)..ids.len() {
            for k in (j + 1)..ids.len() {
                triples.push((ids[i].clone(), ids[j].clone(), ids[k].clone()));
            }
        }
    }
    let rng_seed = rng::derive_seed(master_seed, sr.sr_id(), "triples");
    if triples.len() > cap {
        let mut rng = rng::stream(master_seed, sr.sr_id(), "triples");
        let (sampled, _) = triples.partial_shuffle(&mut rng, cap);
        let mut sampled = sampled.to_vec();
        sampled.sort();
        triples = sampled;
    }
    Ok(TripleSample { triples, rng_seed })
}

/// Shared resources handed to the estimator runner.
#[derive(Clone, Copy, Default)]
pub struct EstimatorResources<'a> {
    pub embeddings: Option<&'a EmbeddingTable>,
    pub background: Option<&'a LanguageModel>,
    pub docsim: DocSimConfig,
    pub clusters: NumClustersConfig,
}

fn seed_doc<'a>(sr: &'a SystematicReview, id: &str) -> Result<&'a crate::corpus::Document> {
    sr.candidates().get(id).ok_or_else(|| Error::UnknownDocument {
        sr_id: sr.sr_id().to_string(),
        doc_id: id.to_string(),
    })
}

/// Average the measure over both seeds of a pair: each seed acts as the
/// query and the two values are averaged into the pair's value.
fn qpp_pair_value(
    measure: QppMeasure,
    sr: &SystematicReview,
    pair: &(String, String),
) -> Result<Score> {
    let v1 = qpp_measure(measure, seed_doc(sr, &pair.0)?, sr.candidates())?;
    let v2 = qpp_measure(measure, seed_doc(sr, &pair.1)?, sr.candidates())?;
    Ok((v1 + v2) / 2.0)
}

/// Run one estimator for one review using a shared pair sample.
pub fn estimate_for_review(
    kind: EstimatorKind,
    sr: &SystematicReview,
    pairs: &PairSample,
    resources: &EstimatorResources<'_>,
    master_seed: u64,
) -> Result<EstimateRecord> {
    let name = kind.name();
    let record = |values: Vec<Score>, seed: u64| {
        EstimateRecord::from_values(sr.sr_id(), name, values, seed)
    };

    match kind {
        EstimatorKind::TopicBroadness
        | EstimatorKind::TbNoSeedSim
        | EstimatorKind::TbNoCandSim => {
            let variant = match kind {
                EstimatorKind::TopicBroadness => TbVariant::Full,
                EstimatorKind::TbNoSeedSim => TbVariant::DropSeedSim,
                _ => TbVariant::DropCandidateSim,
            };
            let mut values = Vec::with_capacity(pairs.pairs.len());
            for pair in &pairs.pairs {
                let s1 = seed_doc(sr, &pair.0)?;
                let s2 = seed_doc(sr, &pair.1)?;
                values.push(tb_variant(variant, SeedPair::new(s1, s2), sr.candidates())?);
            }
            Ok(record(values, pairs.rng_seed))
        }
        EstimatorKind::Qpp(measure) => {
            let mut values = Vec::with_capacity(pairs.pairs.len());
            for pair in &pairs.pairs {
                values.push(qpp_pair_value(measure, sr, pair)?);
            }
            Ok(record(values, pairs.rng_seed))
        }
        EstimatorKind::CollSize => Ok(record(vec![sr.candidates().len() as Score], 0)),
        EstimatorKind::CollClarity => {
            let background = resources
                .background
                .ok_or_else(|| Error::MissingResource("background language model".into()))?;
            Ok(record(vec![coll_clarity(sr.candidates(), background)?], 0))
        }
        EstimatorKind::NumClusters => {
            let table = resources
                .embeddings
                .ok_or_else(|| Error::MissingResource("embedding table".into()))?;
            let seed = rng::derive_seed(master_seed, sr.sr_id(), "clusters");
            let mut rng = rng::stream(master_seed, sr.sr_id(), "clusters");
            let k = num_clusters(sr.candidates(), table, &resources.clusters, &mut rng)?;
            Ok(record(vec![k as Score], seed))
        }
        EstimatorKind::AvgDocSim
        | EstimatorKind::SumDocSim
        | EstimatorKind::MaxDocSim
        | EstimatorKind::StdevDocSim => {
            let table = resources
                .embeddings
                .ok_or_else(|| Error::MissingResource("embedding table".into()))?;
            let seed = rng::derive_seed(master_seed, sr.sr_id(), "docsim");
            let mut rng = rng::stream(master_seed, sr.sr_id(), "docsim");
            let st = docsim_family(sr.candidates(), table, &resources.docsim, &mut rng)?;
            let value = match kind {
                EstimatorKind::AvgDocSim => st.avg,
                EstimatorKind::SumDocSim => st.sum,
                EstimatorKind::MaxDocSim => st.max,
                _ => st.stdev,
            };
            Ok(record(vec![value], if st.sampled { seed } else { 0 }))
        }
    }
}

/// Triple-based variant of the proposed measure: per sampled triple, take the
/// minimum of its three pair values, then average over triples.
pub fn tb_triples_min(sr: &SystematicReview, triples: &TripleSample) -> Result<EstimateRecord> {
    let coll = sr.candidates();
    let mut values = Vec::with_capacity(triples.triples.len());
    for (a, b, c) in &triples.triples {
        let da = seed_doc(sr, a)?;
        let db = seed_doc(sr, b)?;
        let dc = seed_doc(sr, c)?;
        let t_ab = topic_broadness(SeedPair::new(da, db), coll)?;
        let t_ac = topic_broadness(SeedPair::new(da, dc), coll)?;
        let t_bc = topic_broadness(SeedPair::new(db, dc), coll)?;
        values.push(t_ab.min(t_ac).min(t_bc));
    }
    Ok(EstimateRecord::from_values(
        sr.sr_id(),
        "TB",
        values,
        triples.rng_seed,
    ))
}

/// Run one estimator under the three-seed protocol. The proposed measure
/// uses the triple-minimum rule; the seed-query baselines average their
/// three per-seed values per triple; collection-level estimators are
/// unchanged. The ablation variants are two-seed only.
pub fn estimate_for_review_triples(
    kind: EstimatorKind,
    sr: &SystematicReview,
    triples: &TripleSample,
    resources: &EstimatorResources<'_>,
    master_seed: u64,
) -> Result<EstimateRecord> {
    match kind {
        EstimatorKind::TopicBroadness => tb_triples_min(sr, triples),
        EstimatorKind::TbNoSeedSim | EstimatorKind::TbNoCandSim => Err(Error::InvalidConfig(
            format!("{} is defined for the two-seed protocol only", kind.name()),
        )),
        EstimatorKind::Qpp(measure) => {
            let mut values = Vec::with_capacity(triples.triples.len());
            for (a, b, c) in &triples.triples {
                let va = qpp_measure(measure, seed_doc(sr, a)?, sr.candidates())?;
                let vb = qpp_measure(measure, seed_doc(sr, b)?, sr.candidates())?;
                let vc = qpp_measure(measure, seed_doc(sr, c)?, sr.candidates())?;
                values.push((va + vb + vc) / 3.0);
            }
            Ok(EstimateRecord::from_values(
                sr.sr_id(),
                kind.name(),
                values,
                triples.rng_seed,
            ))
        }
        _ => {
            // Collection-level estimators do not depend on the seeds; reuse
            // the pair-protocol computation with an empty pair list.
            let no_pairs = PairSample {
                pairs: Vec::new(),
                rng_seed: triples.rng_seed,
            };
            estimate_for_review(kind, sr, &no_pairs, resources, master_seed)
        }
    }
}
