//! The topic-broadness estimate and its two ablation variants.
//!
//! For seeds `s1`, `s2` and candidate collection `C` (seeds excluded from the
//! candidate sums):
//!
//! ```text
//! TB = -2·sim(s1,s2) / ( Σ_c sim(s1,c) + Σ_c sim(s2,c) )
//! ```
//!
//! where `sim` is the term-overlap similarity. TB is always ≤ 0; values near
//! zero mean a broad topic and predict low ranking quality, so the negated
//! value serves as the ranking-quality estimate.

use crate::corpus::{overlap_sim, CandidateCollection, Document};
use crate::{Error, Result, Score};

/// Two distinct seed documents.
#[derive(Debug, Clone, Copy)]
pub struct SeedPair<'a> {
    s1: &'a Document,
    s2: &'a Document,
}

impl<'a> SeedPair<'a> {
    /// Panics if the two documents share an id.
    pub fn new(s1: &'a Document, s2: &'a Document) -> Self {
        assert_ne!(s1.id(), s2.id(), "seed pair needs distinct documents");
        Self { s1, s2 }
    }

    pub fn s1(&self) -> &Document {
        self.s1
    }

    pub fn s2(&self) -> &Document {
        self.s2
    }
}

/// Ablation variants: drop one of the two similarity types.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TbVariant {
    /// The full measure.
    Full,
    /// Without the seed-seed similarity: `-2 / denominator`.
    DropSeedSim,
    /// Without the seed-candidate similarities: `-sim(s1,s2) / 2`.
    DropCandidateSim,
}

/// Numerator and denominator pieces of the measure, exact integer sums.
#[derive(Debug, Clone, Copy)]
pub struct TbParts {
    pub seed_sim: u64,
    pub candidate_sum: u64,
}

/// Exact integer sums behind the measure. Seeds present in the collection do
/// not contribute to the candidate sums.
pub fn tb_parts(pair: SeedPair<'_>, coll: &CandidateCollection) -> TbParts {
    let (s1, s2) = (pair.s1, pair.s2);
    let mut candidate_sum = 0u64;
    for c in coll.docs() {
        if c.id() == s1.id() || c.id() == s2.id() {
            continue;
        }
        candidate_sum += overlap_sim(s1, c) + overlap_sim(s2, c);
    }
    TbParts {
        seed_sim: overlap_sim(s1, s2),
        candidate_sum,
    }
}

/// Topic broadness of one seed pair over a collection. Errors when neither
/// seed shares a term with any candidate.
pub fn topic_broadness(pair: SeedPair<'_>, coll: &CandidateCollection) -> Result<Score> {
    tb_variant(TbVariant::Full, pair, coll)
}

/// Topic broadness or one of its ablations.
pub fn tb_variant(
    variant: TbVariant,
    pair: SeedPair<'_>,
    coll: &CandidateCollection,
) -> Result<Score> {
    let parts = tb_parts(pair, coll);
    match variant {
        TbVariant::Full => {
            if parts.candidate_sum == 0 {
                return Err(Error::DegenerateCollection);
            }
            Ok(-2.0 * parts.seed_sim as Score / parts.candidate_sum as Score)
        }
        TbVariant::DropSeedSim => {
            if parts.candidate_sum == 0 {
                return Err(Error::DegenerateCollection);
            }
            Ok(-2.0 / parts.candidate_sum as Score)
        }
        TbVariant::DropCandidateSim => Ok(-(parts.seed_sim as Score) / 2.0),
    }
}
