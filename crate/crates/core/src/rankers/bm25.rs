//! Okapi BM25 over the seed document's unique terms.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::corpus::{CandidateCollection, Document};
use crate::num::Real;
use crate::{Error, Result, Score};

use super::ranking::Ranking;
use super::SeedRanker;

/// BM25 free parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bm25Params {
    pub k1: Score,
    pub b: Score,
}

impl Default for Bm25Params {
    fn default() -> Self {
        Self { k1: 1.2, b: 0.75 }
    }
}

/// Smoothed inverse document frequency: `ln(1 + (N - df + 0.5)/(df + 0.5))`.
pub fn bm25_idf<R: Real>(df: u32, n_docs: usize) -> R {
    let df = R::from_f64_lossy(f64::from(df));
    let n = R::from_usize_lossy(n_docs);
    let half = R::from_f64_lossy(0.5);
    (R::one() + (n - df + half) / (df + half)).ln()
}

/// Term-saturation factor: `tf·(k1+1) / (tf + k1·(1 - b + b·len/avg_len))`.
pub fn bm25_tf_sat<R: Real>(tf: u32, doc_len: usize, avg_len: R, k1: R, b: R) -> R {
    if tf == 0 {
        return R::zero();
    }
    let tf = R::from_f64_lossy(f64::from(tf));
    let len_norm = R::one() - b + b * R::from_usize_lossy(doc_len) / avg_len;
    tf * (k1 + R::one()) / (tf + k1 * len_norm)
}

/// Rank every candidate except the seed by BM25 over the seed's unique
/// terms. Collection statistics (`N`, `df`, average length) come from the
/// full collection.
pub fn bm25_rank(
    seed: &Document,
    coll: &CandidateCollection,
    params: Bm25Params,
) -> Result<Ranking> {
    let stats = coll.stats();
    let candidates: Vec<&Document> = coll.docs().filter(|d| d.id() != seed.id()).collect();
    if candidates.is_empty() {
        return Err(Error::EmptyCollection);
    }

    // Unique seed terms, restricted to those the collection has seen.
    let terms: Vec<(&str, Score)> = seed
        .tf_map()
        .keys()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .filter_map(|term| {
            let df = stats.df(term);
            (df > 0).then(|| (term.as_str(), bm25_idf::<Score>(df, stats.n_docs())))
        })
        .collect();

    let avg_len = stats.avg_doc_len();
    let scores = candidates
        .into_iter()
        .map(|doc| {
            let score: Score = terms
                .iter()
                .map(|&(term, idf)| {
                    idf * bm25_tf_sat(doc.tf(term), doc.len(), avg_len, params.k1, params.b)
                })
                .sum();
            (doc.id().to_string(), score)
        })
        .collect();
    Ok(Ranking::from_scores(coll.sr_id(), seed.id(), scores))
}

/// [`SeedRanker`] wrapper around [`bm25_rank`].
#[derive(Debug, Clone, Default)]
pub struct Bm25Ranker {
    pub params: Bm25Params,
}

impl SeedRanker for Bm25Ranker {
    fn name(&self) -> &str {
        "bm25"
    }

    fn rank(&self, seed: &Document, coll: &CandidateCollection) -> Result<Ranking> {
        bm25_rank(seed, coll, self.params)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::TokenizerConfig;

    fn doc(id: &str, text: &str) -> Document {
        Document::new(id, "", text, &TokenizerConfig::default())
    }

    fn coll(docs: Vec<Document>) -> CandidateCollection {
        CandidateCollection::new("sr", docs).unwrap()
    }

    #[test]
    fn no_shared_terms_means_all_zero_and_id_order() {
        let c = coll(vec![doc("d2", "x y"), doc("d1", "z w"), doc("d3", "q")]);
        let seed = doc("seed", "unrelated terms");
        let r = bm25_rank(&seed, &c, Bm25Params::default()).unwrap();
        assert!(r.entries().iter().all(|e| e.score == 0.0));
        let ids: Vec<&str> = r.ids().collect();
        assert_eq!(ids, vec!["d1", "d2", "d3"]);
    }

    #[test]
    fn matching_doc_ranks_first() {
        let c = coll(vec![doc("d1", "a x"), doc("d2", "y z")]);
        let seed = doc("seed", "a");
        let r = bm25_rank(&seed, &c, Bm25Params::default()).unwrap();
        assert_eq!(r.ids().next(), Some("d1"));
        assert!(r.entries()[0].score > 0.0);
    }

    #[test]
    fn seed_is_excluded_from_its_own_ranking() {
        let c = coll(vec![doc("d1", "a"), doc("d2", "a b")]);
        let seed = c.get("d1").unwrap().clone();
        let r = bm25_rank(&seed, &c, Bm25Params::default()).unwrap();
        assert!(r.ids().all(|id| id != "d1"));
        assert_eq!(r.len(), 1);
    }

    #[test]
    fn empty_candidate_set_errors() {
        let c = coll(vec![doc("d1", "a")]);
        let seed = c.get("d1").unwrap().clone();
        assert!(matches!(
            bm25_rank(&seed, &c, Bm25Params::default()),
            Err(Error::EmptyCollection)
        ));
    }

    /// Independent scalar oracle: recompute every factor with separate code
    /// and plain f64 arithmetic.
    fn oracle_score(
        seed: &Document,
        doc: &Document,
        all: &[&Document],
        k1: f64,
        b: f64,
    ) -> f64 {
        let n = all.len() as f64;
        let avg_len = all.iter().map(|d| d.len() as f64).sum::<f64>() / n;
        let mut seen: Vec<&str> = Vec::new();
        let mut score = 0.0;
        for term in seed.tokens() {
            if seen.contains(&term.as_str()) {
                continue;
            }
            seen.push(term);
            let df = all.iter().filter(|d| d.tf(term) > 0).count() as f64;
            if df == 0.0 {
                continue;
            }
            let idf = (1.0 + (n - df + 0.5) / (df + 0.5)).ln();
            let tf = doc.tf(term) as f64;
            if tf == 0.0 {
                continue;
            }
            let denom = tf + k1 * (1.0 - b + b * doc.len() as f64 / avg_len);
            score += idf * tf * (k1 + 1.0) / denom;
        }
        score
    }

    #[test]
    fn matches_independent_oracle_on_toy_collection() {
        let d1 = doc("d1", "heart valve surgery outcome");
        let d2 = doc("d2", "heart heart attack risk");
        let d3 = doc("d3", "liver function tests");
        let c = coll(vec![d1.clone(), d2.clone(), d3.clone()]);
        let seed = doc("seed", "heart valve risk");
        let params = Bm25Params { k1: 1.2, b: 0.75 };
        let r = bm25_rank(&seed, &c, params).unwrap();
        let all = [&d1, &d2, &d3];
        for entry in r.entries() {
            let expected = oracle_score(&seed, c.get(&entry.doc_id).unwrap(), &all, 1.2, 0.75);
            assert!(
                (entry.score - expected).abs() < 1e-9,
                "{}: {} vs {}",
                entry.doc_id,
                entry.score,
                expected
            );
        }
    }

    #[test]
    fn higher_tf_strictly_increases_score() {
        // Same length docs; d2 repeats the seed term.
        let c = coll(vec![doc("d1", "a x y"), doc("d2", "a a y"), doc("d3", "p q r")]);
        let seed = doc("seed", "a");
        let r = bm25_rank(&seed, &c, Bm25Params::default()).unwrap();
        let score_of = |id: &str| {
            r.entries()
                .iter()
                .find(|e| e.doc_id == id)
                .map(|e| e.score)
                .unwrap()
        };
        assert!(score_of("d2") > score_of("d1"));
    }

    #[test]
    fn invariant_under_insertion_order() {
        let docs = vec![doc("d1", "a b"), doc("d2", "a a"), doc("d3", "c")];
        let mut reordered = docs.clone();
        reordered.reverse();
        let seed = doc("seed", "a c");
        let r1 = bm25_rank(&seed, &coll(docs), Bm25Params::default()).unwrap();
        let r2 = bm25_rank(&seed, &coll(reordered), Bm25Params::default()).unwrap();
        assert_eq!(r1.entries(), r2.entries());
    }
}
