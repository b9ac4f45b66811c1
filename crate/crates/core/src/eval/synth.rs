//! Synthetic systematic reviews with known topic broadness.
//!
//! Each review has a vocabulary split into background terms and a topic
//! block. Relevant documents mix a shared topic distribution with per-seed
//! subtopics; the `overlap` parameter slides between one shared topic
//! (narrow, overlap = 1) and disjoint subtopics (broad, overlap = 0), so it
//! monotonically controls the expected term overlap between seeds.
//! Non-relevant documents draw mostly from the background with a configurable
//! leak from the review's topic block, which makes ranking harder as the
//! collection grows.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::{Document, TokenizerConfig};
use crate::ingest::{EmbeddingTable, Label, SystematicReview};
use crate::rng;
use crate::{Error, Result};

/// Generator settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthConfig {
    pub n_srs: usize,
    pub docs_per_sr: usize,
    pub vocab_size: usize,
    /// Topic-mixture overlap in [0, 1]; 1 = narrow topic, 0 = broad.
    pub overlap: f64,
    /// Master seed for the generator streams.
    pub seed: u64,
    /// Relevant documents per review.
    pub n_relevant: usize,
    /// Mean tokens per document.
    pub doc_len: usize,
    /// Relative document-length jitter in [0, 1): each document's length is
    /// drawn uniformly from `doc_len · (1 ± jitter)`.
    pub doc_len_jitter: f64,
    /// Probability that a relevant-document token is topical.
    pub topic_mass: f64,
    /// Probability that a non-relevant token leaks from the topic block.
    pub distractor_topic_mass: f64,
    /// When set, each review draws its collection size uniformly from this
    /// inclusive range instead of using `docs_per_sr`.
    pub docs_per_sr_range: Option<(usize, usize)>,
    /// Review id prefix; ids are `{prefix}{index:03}`.
    pub sr_id_prefix: String,
}

impl Default for SynthConfig {
    fn default() -> Self {
        Self {
            n_srs: 50,
            docs_per_sr: 64,
            vocab_size: 400,
            overlap: 0.5,
            seed: 0,
            n_relevant: 5,
            doc_len: 60,
            doc_len_jitter: 0.25,
            topic_mass: 0.5,
            distractor_topic_mass: 0.15,
            docs_per_sr_range: None,
            sr_id_prefix: "SYN".to_string(),
        }
    }
}

const TOPIC_TERMS: usize = 8;
const SUBTOPIC_TERMS: usize = 8;

fn term_name(i: usize) -> String {
    format!("w{i:05}")
}

impl SynthConfig {
    fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::BadSynthConfig(msg));
        if self.n_srs == 0 {
            return fail("n_srs must be positive".into());
        }
        if !(0.0..=1.0).contains(&self.overlap) {
            return fail(format!("overlap {} outside [0, 1]", self.overlap));
        }
        if self.n_relevant < 2 {
            return fail("need at least 2 relevant documents".into());
        }
        if self.doc_len == 0 {
            return fail("doc_len must be positive".into());
        }
        if !(0.0..1.0).contains(&self.doc_len_jitter) {
            return fail(format!("doc_len_jitter {} outside [0, 1)", self.doc_len_jitter));
        }
        let (lo, hi) = self.size_range();
        if lo <= self.n_relevant || lo > hi {
            return fail(format!(
                "collection size range [{lo}, {hi}] must exceed n_relevant {}",
                self.n_relevant
            ));
        }
        if self.topic_pool_len() < TOPIC_TERMS + self.n_relevant * SUBTOPIC_TERMS {
            return fail(format!(
                "vocab {} too small for {} subtopics",
                self.vocab_size, self.n_relevant
            ));
        }
        Ok(())
    }

    fn size_range(&self) -> (usize, usize) {
        self.docs_per_sr_range
            .unwrap_or((self.docs_per_sr, self.docs_per_sr))
    }

    fn background_len(&self) -> usize {
        (self.vocab_size * 3) / 5
    }

    fn topic_pool_len(&self) -> usize {
        self.vocab_size - self.background_len()
    }
}

/// Cumulative-weight sampler over a Zipf-like background distribution.
struct ZipfSampler {
    cumulative: Vec<f64>,
}

impl ZipfSampler {
    fn new(n: usize) -> Self {
        let mut cumulative = Vec::with_capacity(n);
        let mut acc = 0.0;
        for rank in 0..n {
            acc += 1.0 / (rank + 1) as f64;
            cumulative.push(acc);
        }
        Self { cumulative }
    }

    fn sample(&self, rng: &mut impl Rng) -> usize {
        let total = *self.cumulative.last().expect("nonempty");
        let target = rng.gen::<f64>() * total;
        self.cumulative.partition_point(|&c| c < target)
    }
}

/// Generate the configured family of reviews. Deterministic for a fixed
/// config (per-review RNG streams derive from the master seed).
pub fn synth_generate(config: &SynthConfig) -> Result<Vec<SystematicReview>> {
    config.validate()?;
    let bg_len = config.background_len();
    let zipf = ZipfSampler::new(bg_len);
    let tokenizer = TokenizerConfig::default();

    let mut reviews = Vec::with_capacity(config.n_srs);
    for sr_index in 0..config.n_srs {
        let sr_id = format!("{}{sr_index:03}", config.sr_id_prefix);
        let mut rng = rng::stream(config.seed, &sr_id, "synth");

        let (lo, hi) = config.size_range();
        let n_docs = if lo == hi { lo } else { rng.gen_range(lo..=hi) };

        // Carve this review's topic block out of the topic pool.
        let mut pool: Vec<usize> = (bg_len..config.vocab_size).collect();
        let need = TOPIC_TERMS + config.n_relevant * SUBTOPIC_TERMS;
        let (block, _) = pool.partial_shuffle(&mut rng, need);
        let topic: Vec<usize> = block[..TOPIC_TERMS].to_vec();
        let subtopics: Vec<Vec<usize>> = (0..config.n_relevant)
            .map(|i| {
                block[TOPIC_TERMS + i * SUBTOPIC_TERMS..TOPIC_TERMS + (i + 1) * SUBTOPIC_TERMS]
                    .to_vec()
            })
            .collect();
        let whole_block: Vec<usize> = block.to_vec();

        let mut docs = Vec::with_capacity(n_docs);
        let mut fulldoc_labels = BTreeMap::new();
        for doc_index in 0..n_docs {
            let relevant = doc_index < config.n_relevant;
            let len = if config.doc_len_jitter == 0.0 {
                config.doc_len
            } else {
                let lo = ((config.doc_len as f64) * (1.0 - config.doc_len_jitter)).round() as usize;
                let hi = ((config.doc_len as f64) * (1.0 + config.doc_len_jitter)).round() as usize;
                rng.gen_range(lo.max(1)..=hi.max(1))
            };
            let mut tokens = Vec::with_capacity(len);
            for _ in 0..len {
                let term = if relevant {
                    if rng.gen::<f64>() < config.topic_mass {
                        if rng.gen::<f64>() < config.overlap {
                            topic[rng.gen_range(0..topic.len())]
                        } else {
                            let sub = &subtopics[doc_index];
                            sub[rng.gen_range(0..sub.len())]
                        }
                    } else {
                        zipf.sample(&mut rng)
                    }
                } else if rng.gen::<f64>() < config.distractor_topic_mass {
                    whole_block[rng.gen_range(0..whole_block.len())]
                } else {
                    zipf.sample(&mut rng)
                };
                tokens.push(term_name(term));
            }
            let doc_id = format!("{sr_id}-{doc_index:04}");
            let abstract_text = tokens.join(" ");
            docs.push(Document::new(&doc_id, "", abstract_text, &tokenizer));
            fulldoc_labels.insert(
                doc_id,
                if relevant {
                    Label::Relevant
                } else {
                    Label::NonRelevant
                },
            );
        }

        let build = SystematicReview::assemble(
            &sr_id,
            docs,
            &[],
            fulldoc_labels.clone(),
            fulldoc_labels,
        )?;
        reviews.push(build.review);
    }
    Ok(reviews)
}

/// Deterministic pseudo-random embedding table over the synthetic
/// vocabulary, for exercising the embedding-based rankers and estimators
/// without external data.
pub fn synth_embeddings(vocab_size: usize, dim: usize, seed: u64) -> EmbeddingTable {
    let mut rng = rng::stream(seed, "synth-embeddings", "table");
    let entries = (0..vocab_size).map(|i| {
        let v: Vec<f32> = (0..dim).map(|_| rng.gen_range(-1.0f32..1.0)).collect();
        (term_name(i), v)
    });
    EmbeddingTable::new(dim, entries).expect("uniform dimension by construction")
}
