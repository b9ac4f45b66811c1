//! Unigram language models with a floor for unseen terms.

use std::collections::{BTreeMap, HashMap};

use crate::{Error, Prob, Result};

use super::collection::CollectionStats;

/// Probability mass assigned to any term outside the vocabulary. Small
/// enough that the total mass stays within 1e-9 of 1, large enough to keep
/// every log finite.
pub const DEFAULT_OOV_FLOOR: Prob = 1e-10;

/// Maximum-likelihood unigram model over a vocabulary, with an out-of-
/// vocabulary floor so divergences stay finite. Probabilities iterate in
/// term order so sums over the model are reproducible.
#[derive(Debug, Clone)]
pub struct LanguageModel {
    probs: BTreeMap<String, Prob>,
    oov_floor: Prob,
}

impl LanguageModel {
    /// Estimate from collection statistics: `p(term) = cf(term) / total`.
    pub fn from_stats(stats: &CollectionStats) -> Result<Self> {
        Self::from_counts(stats.cf_iter().map(|(t, c)| (t.to_string(), c)))
    }

    /// Estimate from raw term counts (e.g. a precomputed background corpus
    /// count file). Errors when the counts sum to zero.
    pub fn from_counts(counts: impl IntoIterator<Item = (String, u64)>) -> Result<Self> {
        let mut raw: HashMap<String, u64> = HashMap::new();
        let mut total = 0u64;
        for (term, count) in counts {
            if count == 0 {
                continue;
            }
            total += count;
            *raw.entry(term).or_insert(0) += count;
        }
        if total == 0 {
            return Err(Error::ZeroTotalTokens);
        }
        let probs = raw
            .into_iter()
            .map(|(t, c)| (t, c as Prob / total as Prob))
            .collect();
        Ok(Self {
            probs,
            oov_floor: DEFAULT_OOV_FLOOR,
        })
    }

    /// Probability of `term`; the floor for unseen terms, never zero.
    pub fn prob(&self, term: &str) -> Prob {
        self.probs.get(term).copied().unwrap_or(self.oov_floor)
    }

    pub fn oov_floor(&self) -> Prob {
        self.oov_floor
    }

    pub fn vocab_size(&self) -> usize {
        self.probs.len()
    }

    /// Iterate (term, probability) in arbitrary order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, Prob)> {
        self.probs.iter().map(|(t, &p)| (t.as_str(), p))
    }

    /// Total in-vocabulary mass plus the implied floor mass; within 1e-9 of
    /// one by construction.
    pub fn total_mass(&self) -> Prob {
        self.probs.values().sum::<Prob>() + self.oov_floor
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Document;

    #[test]
    fn maximum_likelihood() {
        let lm = LanguageModel::from_counts([("a".to_string(), 3), ("b".to_string(), 1)]).unwrap();
        assert!((lm.prob("a") - 0.75).abs() < 1e-12);
        assert!((lm.prob("b") - 0.25).abs() < 1e-12);
    }

    #[test]
    fn unseen_term_gets_floor_not_zero() {
        let lm = LanguageModel::from_counts([("a".to_string(), 3)]).unwrap();
        assert_eq!(lm.prob("zzz"), DEFAULT_OOV_FLOOR);
        assert!(lm.prob("zzz") > 0.0);
    }

    #[test]
    fn uniform_counts_give_uniform_probs() {
        let counts = (0..10).map(|i| (format!("t{i}"), 5u64));
        let lm = LanguageModel::from_counts(counts).unwrap();
        for i in 0..10 {
            assert!((lm.prob(&format!("t{i}")) - 0.1).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_tokens_is_an_error() {
        assert!(matches!(
            LanguageModel::from_counts(std::iter::empty()),
            Err(Error::ZeroTotalTokens)
        ));
        assert!(matches!(
            LanguageModel::from_counts([("a".to_string(), 0)]),
            Err(Error::ZeroTotalTokens)
        ));
    }

    #[test]
    fn mass_is_within_tolerance_of_one() {
        let docs = vec![
            Document::from_tokens("d1", vec!["a".into(), "b".into(), "a".into()]),
            Document::from_tokens("d2", vec!["c".into()]),
        ];
        let stats = CollectionStats::build(&docs).unwrap();
        let lm = LanguageModel::from_stats(&stats).unwrap();
        assert!((lm.total_mass() - 1.0).abs() <= 1e-9);
        for (_, p) in lm.iter() {
            assert!(p > 0.0);
        }
    }
}
