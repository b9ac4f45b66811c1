//! Seed-driven ranking models: BM25, average-embedding similarity, and a
//! query-likelihood ranker with a pluggable term-weight hook.
//!
//! All rankers are pure functions of immutable inputs: the ranking for a
//! fixed seed and collection is deterministic, ordered by descending score
//! with ties broken by ascending document id, and never contains the seed.

mod aes;
mod bm25;
mod ql;
mod ranking;

pub use aes::{aes_rank, doc_embedding, AesRanker, DocVector};
pub use bm25::{bm25_rank, Bm25Params, Bm25Ranker};
pub use ql::{ql_rank, QlRanker, SdrLiteWeight, TermWeight, UniformWeight};
pub use ranking::{Ranking, ScoredDoc};

use crate::corpus::{CandidateCollection, Document};
use crate::Result;

/// A ranking model driven by one seed document.
pub trait SeedRanker: Send + Sync {
    /// Short name used in reports and run files.
    fn name(&self) -> &str;

    /// Rank every candidate except the seed itself.
    fn rank(&self, seed: &Document, coll: &CandidateCollection) -> Result<Ranking>;
}
