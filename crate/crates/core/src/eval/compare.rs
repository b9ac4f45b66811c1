//! Cross-model analysis of per-review ranking qualities.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::math::stats;
use crate::{Error, Result, Score};

use super::correlation::spearman;

/// One review in a model's top or bottom list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedSr {
    pub sr_id: String,
    pub mean_ap: Score,
    /// True when the review appears in the same extreme group of more than
    /// one model.
    pub shared: bool,
}

/// How much ranking quality depends on the model versus the review.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelComparisonReport {
    /// Mean over reviews of the average pairwise |quality difference|
    /// between models.
    pub mean_pairwise_diff: Score,
    /// Population standard deviation of the same per-review values.
    pub stdev_pairwise_diff: Score,
    /// Per model: highest minus lowest review quality.
    pub quality_gaps: BTreeMap<String, Score>,
    /// Per model pair (`"a/b"`): Spearman between the two review orderings.
    pub cross_model_spearman: BTreeMap<String, Score>,
    /// Five best reviews per model, best first.
    pub top5: BTreeMap<String, Vec<RankedSr>>,
    /// Five worst reviews per model, worst first.
    pub bottom5: BTreeMap<String, Vec<RankedSr>>,
    pub n_srs: usize,
}

/// Compare per-review qualities across models. Every model must cover the
/// same review set.
pub fn compare_models(
    qualities_by_ranker: &BTreeMap<String, BTreeMap<String, Score>>,
) -> Result<ModelComparisonReport> {
    let rankers: Vec<&String> = qualities_by_ranker.keys().collect();
    if rankers.len() < 2 {
        return Err(Error::TooFewPoints {
            need: 2,
            got: rankers.len(),
        });
    }
    let base_ids: Vec<&String> = qualities_by_ranker[rankers[0]].keys().collect();
    for r in &rankers[1..] {
        let ids: Vec<&String> = qualities_by_ranker[*r].keys().collect();
        if ids != base_ids {
            let mut missing: Vec<String> = base_ids
                .iter()
                .filter(|id| !ids.contains(id))
                .map(|s| (*s).clone())
                .collect();
            missing.extend(
                ids.iter()
                    .filter(|id| !base_ids.contains(id))
                    .map(|s| (*s).clone()),
            );
            return Err(Error::CoverageMismatch(missing));
        }
    }

    // (a) per-review pairwise |difference|, averaged over model pairs.
    let mut per_sr_diff: Vec<Score> = Vec::with_capacity(base_ids.len());
    for id in &base_ids {
        let mut sum = 0.0;
        let mut n_pairs = 0usize;
        for i in 0..rankers.len() {
            for j in (i + 1)..rankers.len() {
                let qi = qualities_by_ranker[rankers[i]][*id];
                let qj = qualities_by_ranker[rankers[j]][*id];
                sum += (qi - qj).abs();
                n_pairs += 1;
            }
        }
        per_sr_diff.push(sum / n_pairs as Score);
    }

    // (b) max-min gap per model.
    let mut quality_gaps = BTreeMap::new();
    for r in &rankers {
        let vals: Vec<Score> = qualities_by_ranker[*r].values().copied().collect();
        quality_gaps.insert((*r).clone(), stats::max(&vals) - stats::min(&vals));
    }

    // (c) cross-model Spearman per pair.
    let mut cross = BTreeMap::new();
    for i in 0..rankers.len() {
        for j in (i + 1)..rankers.len() {
            let xs: Vec<Score> = base_ids
                .iter()
                .map(|id| qualities_by_ranker[rankers[i]][*id])
                .collect();
            let ys: Vec<Score> = base_ids
                .iter()
                .map(|id| qualities_by_ranker[rankers[j]][*id])
                .collect();
            let rho = spearman(&xs, &ys)?.value;
            cross.insert(format!("{}/{}", rankers[i], rankers[j]), rho);
        }
    }

    // (d) top-5 / bottom-5 per model with shared flags.
    let extremes = |best: bool| -> BTreeMap<String, Vec<(String, Score)>> {
        let mut out = BTreeMap::new();
        for r in &rankers {
            let mut entries: Vec<(String, Score)> = qualities_by_ranker[*r]
                .iter()
                .map(|(id, q)| (id.clone(), *q))
                .collect();
            entries.sort_by(|a, b| {
                let ord = a.1.total_cmp(&b.1).then_with(|| a.0.cmp(&b.0));
                if best {
                    ord.reverse()
                } else {
                    ord
                }
            });
            entries.truncate(5);
            out.insert((*r).clone(), entries);
        }
        out
    };
    let flag_shared = |groups: BTreeMap<String, Vec<(String, Score)>>| {
        let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
        for entries in groups.values() {
            for (id, _) in entries {
                *counts.entry(id.as_str()).or_insert(0) += 1;
            }
        }
        let counts: BTreeMap<String, usize> = counts
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        groups
            .into_iter()
            .map(|(r, entries)| {
                let ranked = entries
                    .into_iter()
                    .map(|(sr_id, mean_ap)| RankedSr {
                        shared: counts[&sr_id] > 1,
                        sr_id,
                        mean_ap,
                    })
                    .collect();
                (r, ranked)
            })
            .collect()
    };
    let top5 = flag_shared(extremes(true));
    let bottom5 = flag_shared(extremes(false));

    Ok(ModelComparisonReport {
        mean_pairwise_diff: stats::mean(&per_sr_diff),
        stdev_pairwise_diff: stats::population_stdev(&per_sr_diff),
        quality_gaps,
        cross_model_spearman: cross,
        top5,
        bottom5,
        n_srs: base_ids.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qualities(pairs: &[(&str, f64)]) -> BTreeMap<String, Score> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    fn three_models(
        a: &[(&str, f64)],
        b: &[(&str, f64)],
        c: &[(&str, f64)],
    ) -> BTreeMap<String, BTreeMap<String, Score>> {
        [
            ("aes".to_string(), qualities(a)),
            ("bm25".to_string(), qualities(b)),
            ("sdr-lite".to_string(), qualities(c)),
        ]
        .into_iter()
        .collect()
    }

    #[test]
    fn identical_models_have_zero_diff_and_rho_one() {
        let q = [
            ("a", 0.9),
            ("b", 0.3),
            ("c", 0.6),
            ("d", 0.2),
            ("e", 0.8),
            ("f", 0.5),
        ];
        let report = compare_models(&three_models(&q, &q, &q)).unwrap();
        assert_eq!(report.mean_pairwise_diff, 0.0);
        assert_eq!(report.stdev_pairwise_diff, 0.0);
        assert!(report
            .cross_model_spearman
            .values()
            .all(|rho| (rho - 1.0).abs() < 1e-12));
        // All extremes shared by all three models.
        for entries in report.top5.values().chain(report.bottom5.values()) {
            assert!(entries.iter().all(|e| e.shared));
        }
        assert_eq!(report.n_srs, 6);
    }

    #[test]
    fn pairwise_diff_matches_hand_arithmetic() {
        let report = compare_models(&three_models(
            &[("a", 0.9), ("b", 0.1), ("c", 0.5)],
            &[("a", 0.8), ("b", 0.2), ("c", 0.5)],
            &[("a", 0.7), ("b", 0.3), ("c", 0.5)],
        ))
        .unwrap();
        // SR a: |0.9-0.8| + |0.9-0.7| + |0.8-0.7| over 3 pairs = 0.4/3
        // SR b: same -> 0.4/3; SR c: 0.
        let a_diff = 0.4 / 3.0;
        let want_mean = (a_diff + a_diff + 0.0) / 3.0;
        assert!((report.mean_pairwise_diff - want_mean).abs() < 1e-12);
        // Gap per model: 0.8, 0.6, 0.4.
        assert!((report.quality_gaps["aes"] - 0.8).abs() < 1e-12);
        assert!((report.quality_gaps["bm25"] - 0.6).abs() < 1e-12);
        assert!((report.quality_gaps["sdr-lite"] - 0.4).abs() < 1e-12);
    }

    #[test]
    fn coverage_mismatch_is_an_error() {
        let models: BTreeMap<String, BTreeMap<String, Score>> = [
            ("bm25".to_string(), qualities(&[("a", 0.5), ("b", 0.6)])),
            ("aes".to_string(), qualities(&[("a", 0.5), ("c", 0.6)])),
        ]
        .into_iter()
        .collect();
        assert!(matches!(
            compare_models(&models),
            Err(Error::CoverageMismatch(_))
        ));
    }

    #[test]
    fn shared_flag_marks_multi_model_extremes() {
        // "top" review differs between models except "x" shared.
        let report = compare_models(&three_models(
            &[("x", 0.99), ("p", 0.9), ("q", 0.1), ("r", 0.2), ("s", 0.3), ("t", 0.4), ("u", 0.5)],
            &[("x", 0.98), ("p", 0.2), ("q", 0.9), ("r", 0.3), ("s", 0.4), ("t", 0.5), ("u", 0.6)],
            &[("x", 0.97), ("p", 0.3), ("q", 0.2), ("r", 0.9), ("s", 0.5), ("t", 0.6), ("u", 0.7)],
        ))
        .unwrap();
        for entries in report.top5.values() {
            let x = entries.iter().find(|e| e.sr_id == "x").unwrap();
            assert!(x.shared);
        }
    }
}
