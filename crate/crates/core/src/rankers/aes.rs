//! Average-embedding similarity: documents as the mean embedding of their
//! token occurrences, scored by cosine against the seed.

use std::sync::Arc;

use crate::corpus::{CandidateCollection, Document};
use crate::ingest::EmbeddingTable;
use crate::math::vec::{cosine, is_zero};
use crate::{Error, Result, Score};

use super::ranking::Ranking;
use super::SeedRanker;

/// A document projected into embedding space.
#[derive(Debug, Clone, PartialEq)]
pub struct DocVector {
    pub doc_id: String,
    pub vector: Vec<Score>,
    /// True when no token had an embedding; the vector is all zeros.
    pub all_oov: bool,
}

impl DocVector {
    pub fn is_zero(&self) -> bool {
        is_zero(&self.vector)
    }
}

/// Mean embedding over token occurrences (a tf-weighted mean over the
/// vocabulary). Tokens without an embedding are skipped; a document with no
/// embeddable token gets the zero vector, flagged.
pub fn doc_embedding(doc: &Document, table: &EmbeddingTable) -> DocVector {
    let mut sum = vec![0.0 as Score; table.dim()];
    let mut count: u64 = 0;
    for (term, &tf) in doc.tf_map() {
        if let Some(v) = table.get(term) {
            count += u64::from(tf);
            let w = Score::from(tf);
            for (s, &x) in sum.iter_mut().zip(v) {
                *s += w * Score::from(x);
            }
        }
    }
    if count == 0 {
        return DocVector {
            doc_id: doc.id().to_string(),
            vector: sum,
            all_oov: true,
        };
    }
    let denom = count as Score;
    for s in &mut sum {
        *s /= denom;
    }
    DocVector {
        doc_id: doc.id().to_string(),
        vector: sum,
        all_oov: false,
    }
}

/// Rank candidates by cosine similarity of mean embeddings. Documents that
/// embed to the zero vector score -1 so they sort last; a zero-vector seed is
/// unusable.
pub fn aes_rank(
    seed: &Document,
    coll: &CandidateCollection,
    table: &EmbeddingTable,
) -> Result<Ranking> {
    let seed_vec = doc_embedding(seed, table);
    if seed_vec.all_oov {
        return Err(Error::UnusableSeed);
    }
    let mut scores = Vec::with_capacity(coll.len());
    let mut any = false;
    for doc in coll.docs() {
        if doc.id() == seed.id() {
            continue;
        }
        any = true;
        let dv = doc_embedding(doc, table);
        let score = if dv.all_oov {
            -1.0
        } else {
            cosine(&seed_vec.vector, &dv.vector)
        };
        scores.push((doc.id().to_string(), score));
    }
    if !any {
        return Err(Error::EmptyCollection);
    }
    Ok(Ranking::from_scores(coll.sr_id(), seed.id(), scores))
}

/// [`SeedRanker`] wrapper holding a shared embedding table.
#[derive(Clone)]
pub struct AesRanker {
    table: Arc<EmbeddingTable>,
}

impl AesRanker {
    pub fn new(table: Arc<EmbeddingTable>) -> Self {
        Self { table }
    }
}

impl SeedRanker for AesRanker {
    fn name(&self) -> &str {
        "aes"
    }

    fn rank(&self, seed: &Document, coll: &CandidateCollection) -> Result<Ranking> {
        aes_rank(seed, coll, &self.table)
    }
}
