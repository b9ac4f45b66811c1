//! Query-likelihood ranking with Dirichlet smoothing and a pluggable
//! per-term weight.
//!
//! The default weight, `tf(w, seed) · ln(N / df(w))`, stands in for the
//! concept-level weighting of the original seed-driven ranker; a caller with
//! a concept pipeline can substitute its own [`TermWeight`].

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::corpus::{CandidateCollection, Document};
use crate::num::Real;
use crate::{Error, Result, Score};

use super::ranking::Ranking;
use super::SeedRanker;

/// Weight assigned to a seed term when scoring.
pub trait TermWeight: Send + Sync {
    fn weight(&self, term: &str, seed: &Document, coll: &CandidateCollection) -> Score;
}

/// The stand-in weight: seed term frequency times `ln(N / df)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct SdrLiteWeight;

impl TermWeight for SdrLiteWeight {
    fn weight(&self, term: &str, seed: &Document, coll: &CandidateCollection) -> Score {
        let df = coll.stats().df(term);
        if df == 0 {
            return 0.0;
        }
        let idf = (coll.stats().n_docs() as Score / Score::from(df)).ln();
        Score::from(seed.tf(term)) * idf
    }
}

/// Weight of one for every term; mostly for tests.
#[derive(Debug, Clone, Copy, Default)]
pub struct UniformWeight;

impl TermWeight for UniformWeight {
    fn weight(&self, _term: &str, _seed: &Document, _coll: &CandidateCollection) -> Score {
        1.0
    }
}

/// Dirichlet-smoothed term probability:
/// `(tf + mu·p_coll) / (doc_len + mu)`.
pub fn dirichlet_prob<R: Real>(tf: u32, doc_len: usize, p_coll: R, mu: R) -> R {
    (R::from_f64_lossy(f64::from(tf)) + mu * p_coll) / (R::from_usize_lossy(doc_len) + mu)
}

/// Rank candidates by `Σ_w weight(w) · ln p_mu(w | d)` over the seed's unique
/// terms. Terms unseen by the collection are skipped.
pub fn ql_rank(
    seed: &Document,
    coll: &CandidateCollection,
    weights: &dyn TermWeight,
    mu: Score,
) -> Result<Ranking> {
    if mu <= 0.0 {
        return Err(Error::InvalidConfig(format!(
            "Dirichlet mu must be positive, got {mu}"
        )));
    }
    let stats = coll.stats();
    let total = stats.total_tokens() as Score;

    // (term, weight, collection probability) for scorable seed terms.
    let terms: Vec<(&str, Score, Score)> = seed
        .tf_map()
        .keys()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .filter_map(|term| {
            if stats.df(term) == 0 {
                return None; // skipped per contract
            }
            let p_coll = stats.cf(term) as Score / total;
            Some((term.as_str(), weights.weight(term, seed, coll), p_coll))
        })
        .collect();

    let mut scores = Vec::with_capacity(coll.len());
    let mut any = false;
    for doc in coll.docs() {
        if doc.id() == seed.id() {
            continue;
        }
        any = true;
        let score: Score = terms
            .iter()
            .map(|&(term, w, p_coll)| {
                w * dirichlet_prob(doc.tf(term), doc.len(), p_coll, mu).ln()
            })
            .sum();
        scores.push((doc.id().to_string(), score));
    }
    if !any {
        return Err(Error::EmptyCollection);
    }
    Ok(Ranking::from_scores(coll.sr_id(), seed.id(), scores))
}

/// [`SeedRanker`] wrapper; reported as `sdr-lite` in run files and tables.
#[derive(Clone)]
pub struct QlRanker {
    pub mu: Score,
    weights: Arc<dyn TermWeight>,
}

impl QlRanker {
    pub fn new(mu: Score, weights: Arc<dyn TermWeight>) -> Self {
        Self { mu, weights }
    }

    /// The default configuration: `mu = 1000`, SDR-lite weights.
    pub fn sdr_lite(mu: Score) -> Self {
        Self::new(mu, Arc::new(SdrLiteWeight))
    }
}

impl SeedRanker for QlRanker {
    fn name(&self) -> &str {
        "sdr-lite"
    }

    fn rank(&self, seed: &Document, coll: &CandidateCollection) -> Result<Ranking> {
        ql_rank(seed, coll, self.weights.as_ref(), self.mu)
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
    fn higher_tf_wins_at_equal_length() {
        let c = coll(vec![
            doc("d1", "a a a x"),
            doc("d2", "a y y y"),
        ]);
        let seed = doc("seed", "a");
        let r = ql_rank(&seed, &c, &UniformWeight, 100.0).unwrap();
        assert_eq!(r.ids().next(), Some("d1"));
    }

    #[test]
    fn identical_documents_tie_and_order_by_id() {
        let c = coll(vec![
            doc("d2", "a b"),
            doc("d1", "a b"),
            doc("d3", "a b"),
        ]);
        let seed = doc("seed", "a");
        let r = ql_rank(&seed, &c, &SdrLiteWeight, 1000.0).unwrap();
        let ids: Vec<&str> = r.ids().collect();
        assert_eq!(ids, vec!["d1", "d2", "d3"]);
        assert_eq!(r.entries()[0].score, r.entries()[2].score);
    }

    #[test]
    fn scores_converge_as_mu_grows() {
        let c = coll(vec![doc("d1", "a a a"), doc("d2", "a b c")]);
        let seed = doc("seed", "a");
        let spread = |mu: f64| {
            let r = ql_rank(&seed, &c, &UniformWeight, mu).unwrap();
            (r.entries()[0].score - r.entries()[1].score).abs()
        };
        let s1 = spread(10.0);
        let s2 = spread(1e4);
        let s3 = spread(1e8);
        assert!(s2 < s1);
        assert!(s3 < s2);
        assert!(s3 < 1e-6);
    }

    #[test]
    fn unseen_seed_terms_are_skipped() {
        let c = coll(vec![doc("d1", "a"), doc("d2", "b")]);
        let seed = doc("seed", "zzz");
        let r = ql_rank(&seed, &c, &SdrLiteWeight, 1000.0).unwrap();
        // Every term skipped: all scores zero, id order.
        assert!(r.entries().iter().all(|e| e.score == 0.0));
        let ids: Vec<&str> = r.ids().collect();
        assert_eq!(ids, vec!["d1", "d2"]);
    }

    #[test]
    fn non_positive_mu_is_rejected() {
        let c = coll(vec![doc("d1", "a")]);
        assert!(ql_rank(&doc("s", "a"), &c, &UniformWeight, 0.0).is_err());
    }

    /// Independent log-sum oracle with mu = 1000 on a 4-document collection.
    #[test]
    fn matches_independent_oracle() {
        let texts = [
            ("d1", "heart valve repair heart"),
            ("d2", "valve replacement surgery"),
            ("d3", "heart failure cohort study"),
            ("d4", "liver enzyme panel"),
        ];
        let docs: Vec<Document> = texts.iter().map(|(id, s)| doc(id, s)).collect();
        let c = coll(docs.clone());
        let seed = doc("seed", "heart valve study");
        let mu = 1000.0f64;
        let r = ql_rank(&seed, &c, &SdrLiteWeight, mu).unwrap();

        let total: f64 = docs.iter().map(|d| d.len() as f64).sum();
        let n = docs.len() as f64;
        for entry in r.entries() {
            let d = c.get(&entry.doc_id).unwrap();
            let mut expected = 0.0;
            let mut seen: Vec<&str> = Vec::new();
            for term in seed.tokens() {
                if seen.contains(&term.as_str()) {
                    continue;
                }
                seen.push(term);
                let df = docs.iter().filter(|x| x.tf(term) > 0).count() as f64;
                if df == 0.0 {
                    continue;
                }
                let cf: f64 = docs.iter().map(|x| f64::from(x.tf(term))).sum();
                let w = f64::from(seed.tf(term)) * (n / df).ln();
                let p = (f64::from(d.tf(term)) + mu * cf / total) / (d.len() as f64 + mu);
                expected += w * p.ln();
            }
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
    fn invariant_under_insertion_order() {
        let docs = vec![doc("d1", "a b"), doc("d2", "b b"), doc("d3", "a c")];
        let mut rev = docs.clone();
        rev.reverse();
        let seed = doc("seed", "a b");
        let r1 = ql_rank(&seed, &coll(docs), &SdrLiteWeight, 500.0).unwrap();
        let r2 = ql_rank(&seed, &coll(rev), &SdrLiteWeight, 500.0).unwrap();
        assert_eq!(r1.entries(), r2.entries());
    }
}
