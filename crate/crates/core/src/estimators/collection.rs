//! Collection-level broadness estimators: collection size, collection
//! clarity, cluster count, and the pairwise document-similarity family.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::corpus::{CandidateCollection, LanguageModel};
use crate::ingest::EmbeddingTable;
use crate::math::kmeans::{best_k_by_silhouette, KMeansConfig};
use crate::math::vec::cosine;
use crate::rankers::doc_embedding;
use crate::{Error, Result, Score};

/// KL divergence (base 2) from the collection language model to the
/// background model, summed over the collection vocabulary. Non-negative up
/// to rounding because the collection model is proper on its support and the
/// background mass there is at most one.
pub fn coll_clarity(coll: &CandidateCollection, background: &LanguageModel) -> Result<Score> {
    let coll_lm = LanguageModel::from_stats(coll.stats())?;
    Ok(kl_divergence_log2(&coll_lm, background))
}

/// `Σ_w p(w)·log2(p(w)/q(w))` over the vocabulary of `p`.
pub fn kl_divergence_log2(p: &LanguageModel, q: &LanguageModel) -> Score {
    p.iter()
        .map(|(term, p_w)| p_w * (p_w / q.prob(term)).log2())
        .sum()
}

/// Settings for the cluster-count estimator.
#[derive(Debug, Clone, Copy)]
pub struct NumClustersConfig {
    pub k_min: usize,
    pub k_max: usize,
    pub kmeans: KMeansConfig,
    /// Documents are subsampled to this many before clustering; silhouette is
    /// quadratic in the sample. `None` clusters the full collection.
    pub doc_sample_cap: Option<usize>,
}

impl Default for NumClustersConfig {
    fn default() -> Self {
        Self {
            k_min: 2,
            k_max: 100,
            kmeans: KMeansConfig::default(),
            doc_sample_cap: Some(2000),
        }
    }
}

/// Number of clusters in embedding space that maximizes the mean silhouette
/// over `k` in `[k_min, min(k_max, n-1)]`. Needs at least three documents
/// with a nonzero embedding.
pub fn num_clusters(
    coll: &CandidateCollection,
    table: &EmbeddingTable,
    config: &NumClustersConfig,
    rng: &mut impl Rng,
) -> Result<usize> {
    let mut points: Vec<Vec<Score>> = coll
        .docs()
        .map(|d| doc_embedding(d, table))
        .filter(|dv| !dv.all_oov)
        .map(|dv| dv.vector)
        .collect();
    if let Some(cap) = config.doc_sample_cap {
        if points.len() > cap {
            // Partial shuffle keeps the draw O(cap).
            let (sampled, _) = points.partial_shuffle(rng, cap);
            points = sampled.to_vec();
        }
    }
    if points.len() < 3 {
        return Err(Error::TooFewEmbeddable(points.len()));
    }
    let k_max = config.k_max.min(points.len() - 1);
    let k_min = config.k_min.max(2).min(k_max);
    let (k, _) = best_k_by_silhouette(&points, k_min, k_max, config.kmeans, rng);
    Ok(k)
}

/// Settings for the pairwise document-similarity family.
#[derive(Debug, Clone, Copy)]
pub struct DocSimConfig {
    /// Collections larger than this switch from exact all-pairs to sampling.
    pub exact_threshold: usize,
    /// Number of sampled pairs in sampling mode.
    pub sample_pairs: usize,
}

impl Default for DocSimConfig {
    fn default() -> Self {
        Self {
            exact_threshold: 2000,
            sample_pairs: 1_000_000,
        }
    }
}

/// The four statistics over pairwise cosine similarities, plus how they were
/// obtained.
#[derive(Debug, Clone, Copy)]
pub struct DocSimStats {
    pub avg: Score,
    pub sum: Score,
    pub max: Score,
    pub stdev: Score,
    /// Pairs actually evaluated.
    pub n_pairs_used: u64,
    /// True when the pairs were sampled rather than enumerated; `sum` is then
    /// extrapolated to the full pair count.
    pub sampled: bool,
}

/// Pairwise cosine statistics over the documents' mean-embedding vectors.
/// Documents with no embeddable token are excluded; at least two embeddable
/// documents are required.
pub fn docsim_family(
    coll: &CandidateCollection,
    table: &EmbeddingTable,
    config: &DocSimConfig,
    rng: &mut impl Rng,
) -> Result<DocSimStats> {
    let points: Vec<Vec<Score>> = coll
        .docs()
        .map(|d| doc_embedding(d, table))
        .filter(|dv| !dv.all_oov)
        .map(|dv| dv.vector)
        .collect();
    let n = points.len();
    if n < 2 {
        return Err(Error::TooFewDocuments { need: 2, found: n });
    }
    let total_pairs = n as u64 * (n as u64 - 1) / 2;

    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    let mut max = Score::NEG_INFINITY;
    let (n_used, sampled) = if n <= config.exact_threshold {
        for i in 0..n {
            for j in (i + 1)..n {
                let c = cosine(&points[i], &points[j]);
                sum += c;
                sum_sq += c * c;
                max = max.max(c);
            }
        }
        (total_pairs, false)
    } else {
        let draws = config.sample_pairs as u64;
        for _ in 0..draws {
            let i = rng.gen_range(0..n);
            let j = loop {
                let j = rng.gen_range(0..n);
                if j != i {
                    break j;
                }
            };
            let c = cosine(&points[i], &points[j]);
            sum += c;
            sum_sq += c * c;
            max = max.max(c);
        }
        (draws, true)
    };

    let used = n_used as Score;
    let avg = sum / used;
    let variance = (sum_sq / used - avg * avg).max(0.0);
    // In sampling mode the sum is extrapolated to the full pair count so it
    // stays comparable with exact-mode values.
    let sum_out = if sampled { avg * total_pairs as Score } else { sum };
    Ok(DocSimStats {
        avg,
        sum: sum_out,
        max,
        stdev: variance.sqrt(),
        n_pairs_used: n_used,
        sampled,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Document;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn doc(id: &str, text: &str) -> Document {
        let tokens = text.split_whitespace().map(str::to_string).collect();
        Document::from_tokens(id, tokens)
    }

    fn table(entries: &[(&str, &[f32])]) -> EmbeddingTable {
        let dim = entries[0].1.len();
        EmbeddingTable::new(
            dim,
            entries.iter().map(|(t, v)| (t.to_string(), v.to_vec())),
        )
        .unwrap()
    }

    #[test]
    fn clarity_of_identical_models_is_zero() {
        let coll =
            CandidateCollection::new("sr", vec![doc("d1", "a a a"), doc("d2", "b")]).unwrap();
        let background = LanguageModel::from_stats(coll.stats()).unwrap();
        let v = coll_clarity(&coll, &background).unwrap();
        assert!(v.abs() < 1e-12);
    }

    #[test]
    fn clarity_matches_hand_arithmetic() {
        // Collection: P(a)=0.75, P(b)=0.25; background uniform 0.5/0.5.
        let coll =
            CandidateCollection::new("sr", vec![doc("d1", "a a a b")]).unwrap();
        let background =
            LanguageModel::from_counts([("a".to_string(), 5), ("b".to_string(), 5)]).unwrap();
        let v = coll_clarity(&coll, &background).unwrap();
        let expected = 0.75 * 1.5f64.log2() + 0.25 * 0.5f64.log2();
        assert!((v - expected).abs() < 1e-12);
        assert!((v - 0.1887).abs() < 1e-4);
    }

    #[test]
    fn clarity_is_nonnegative_even_with_oov_terms() {
        // Background lacks "c"; the floor keeps the term finite and positive.
        let coll =
            CandidateCollection::new("sr", vec![doc("d1", "a b c c")]).unwrap();
        let background =
            LanguageModel::from_counts([("a".to_string(), 1), ("b".to_string(), 1)]).unwrap();
        let v = coll_clarity(&coll, &background).unwrap();
        assert!(v >= -1e-12);
    }

    #[test]
    fn two_blobs_cluster_to_two() {
        // One unique term per document; vectors form two well-separated
        // blobs with distinct points inside each.
        let mut entries: Vec<(String, Vec<f32>)> = Vec::new();
        let mut docs = Vec::new();
        for i in 0..8 {
            let j = i as f32 * 0.11;
            entries.push((format!("a{i}"), vec![j, -j]));
            entries.push((format!("b{i}"), vec![10.0 + j, 10.0 - j]));
            docs.push(doc(&format!("da{i}"), &format!("a{i}")));
            docs.push(doc(&format!("db{i}"), &format!("b{i}")));
        }
        let t = EmbeddingTable::new(2, entries).unwrap();
        let coll = CandidateCollection::new("sr", docs).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let k = num_clusters(&coll, &t, &NumClustersConfig::default(), &mut rng).unwrap();
        assert_eq!(k, 2);
    }

    #[test]
    fn forced_k_range_returns_that_k() {
        let t = table(&[("a", &[1.0, 0.0]), ("b", &[0.0, 1.0])]);
        let coll = CandidateCollection::new(
            "sr",
            vec![doc("d1", "a"), doc("d2", "b"), doc("d3", "a b"), doc("d4", "a a b")],
        )
        .unwrap();
        let config = NumClustersConfig {
            k_min: 2,
            k_max: 2,
            ..Default::default()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(num_clusters(&coll, &t, &config, &mut rng).unwrap(), 2);
    }

    #[test]
    fn num_clusters_is_deterministic_under_fixed_rng() {
        let t = table(&[("a", &[1.0, 0.0]), ("b", &[0.0, 1.0]), ("c", &[0.7, 0.7])]);
        let docs: Vec<Document> = (0..10)
            .map(|i| doc(&format!("d{i}"), ["a", "b", "c", "a b", "b c"][i % 5]))
            .collect();
        let coll = CandidateCollection::new("sr", docs).unwrap();
        let run = |seed: u64| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            num_clusters(&coll, &t, &NumClustersConfig::default(), &mut rng).unwrap()
        };
        assert_eq!(run(5), run(5));
    }

    #[test]
    fn too_few_embeddable_docs_errors() {
        let t = table(&[("a", &[1.0])]);
        let coll = CandidateCollection::new(
            "sr",
            vec![doc("d1", "a"), doc("d2", "zz"), doc("d3", "yy")],
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(matches!(
            num_clusters(&coll, &t, &NumClustersConfig::default(), &mut rng),
            Err(Error::TooFewEmbeddable(1))
        ));
    }

    #[test]
    fn identical_docs_have_unit_similarity() {
        let t = table(&[("a", &[0.6, 0.8])]);
        let coll = CandidateCollection::new("sr", vec![doc("d1", "a"), doc("d2", "a a")]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let st = docsim_family(&coll, &t, &DocSimConfig::default(), &mut rng).unwrap();
        assert!((st.avg - 1.0).abs() < 1e-12);
        assert!((st.max - 1.0).abs() < 1e-12);
        assert!((st.sum - 1.0).abs() < 1e-12);
        assert!(st.stdev.abs() < 1e-12);
        assert_eq!(st.n_pairs_used, 1);
        assert!(!st.sampled);
    }

    #[test]
    fn three_docs_with_known_cosines() {
        // Pairwise cosines {1.0, 0.0, 0.0}: d1 ~ d2, both orthogonal to d3.
        let t = table(&[("a", &[1.0, 0.0]), ("b", &[0.0, 1.0])]);
        let coll = CandidateCollection::new(
            "sr",
            vec![doc("d1", "a"), doc("d2", "a a"), doc("d3", "b")],
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let st = docsim_family(&coll, &t, &DocSimConfig::default(), &mut rng).unwrap();
        assert!((st.avg - 1.0 / 3.0).abs() < 1e-12);
        assert!((st.sum - 1.0).abs() < 1e-12);
        assert!((st.max - 1.0).abs() < 1e-12);
        assert_eq!(st.n_pairs_used, 3);
    }

    #[test]
    fn sampling_mode_approximates_exact_mode() {
        let t = table(&[("a", &[1.0, 0.0]), ("b", &[0.0, 1.0]), ("c", &[0.7, 0.7])]);
        let docs: Vec<Document> = (0..40)
            .map(|i| doc(&format!("d{i:02}"), ["a", "b", "c", "a b"][i % 4]))
            .collect();
        let coll = CandidateCollection::new("sr", docs).unwrap();
        let exact_cfg = DocSimConfig {
            exact_threshold: 1000,
            sample_pairs: 0,
        };
        let sample_cfg = DocSimConfig {
            exact_threshold: 10,
            sample_pairs: 50_000,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let exact = docsim_family(&coll, &t, &exact_cfg, &mut rng).unwrap();
        let approx = docsim_family(&coll, &t, &sample_cfg, &mut rng).unwrap();
        assert!(!exact.sampled);
        assert!(approx.sampled);
        assert!((exact.avg - approx.avg).abs() < 0.02);
        assert!((exact.sum - approx.sum).abs() / exact.sum.abs() < 0.05);
        assert_eq!(exact.max, 1.0);
    }

    #[test]
    fn single_doc_errors() {
        let t = table(&[("a", &[1.0])]);
        let coll = CandidateCollection::new("sr", vec![doc("d1", "a")]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(matches!(
            docsim_family(&coll, &t, &DocSimConfig::default(), &mut rng),
            Err(Error::TooFewDocuments { need: 2, found: 1 })
        ));
    }
}
