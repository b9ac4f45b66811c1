//! Full evaluation pipeline: ranking qualities for every model, every
//! estimator, the correlation tables, the ablation table, subsample
//! significance testing, and the cross-model comparison.
//!
//! Per-review work is parallelized with rayon; every random draw comes from
//! a stream derived from the master seed and the review id, so parallel and
//! serial runs produce identical results.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::{LanguageModel, TokenizerConfig};
use crate::estimators::{
    estimate_for_review, estimate_for_review_triples, sample_seed_pairs, sample_seed_triples,
    DocSimConfig, EstimateRecord, EstimatorKind, EstimatorResources, NumClustersConfig,
    DEFAULT_PAIR_CAP,
};
use crate::eval::{
    compare_models, evaluate_estimator, significance_test, spearman, sr_quality,
    subsample_groups, CorrelationResult, ModelComparisonReport, QualityScore,
};
use crate::ingest::{EmbeddingTable, SystematicReview};
use crate::rankers::{AesRanker, Bm25Params, Bm25Ranker, QlRanker, SeedRanker};
use crate::rng;
use crate::{Error, Result, Score};

/// Everything the evaluation needs beyond the reviews themselves.
pub struct EvaluationInputs<'a> {
    pub reviews: &'a [SystematicReview],
    pub embeddings: Option<Arc<EmbeddingTable>>,
    pub background: Option<&'a LanguageModel>,
}

/// Pipeline settings; all defaults follow the evaluation protocol.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub tokenizer: TokenizerConfig,
    pub bm25: Bm25Params,
    /// Dirichlet smoothing parameter for the query-likelihood ranker.
    pub mu: Score,
    pub pair_cap: usize,
    pub triple_cap: usize,
    pub master_seed: u64,
    /// Estimators to run; ablations may be included explicitly.
    pub estimator_names: Vec<String>,
    /// Also evaluate the three-seed protocol where possible.
    pub include_triples: bool,
    pub n_subsample_groups: usize,
    pub subsample_group_size: usize,
    #[serde(skip, default)]
    pub docsim: DocSimConfig,
    #[serde(skip, default)]
    pub clusters: NumClustersConfig,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            tokenizer: TokenizerConfig::default(),
            bm25: Bm25Params::default(),
            mu: 1000.0,
            pair_cap: DEFAULT_PAIR_CAP,
            triple_cap: DEFAULT_PAIR_CAP,
            master_seed: 42,
            estimator_names: EstimatorKind::all_with_ablations()
                .into_iter()
                .map(|k| k.name().to_string())
                .collect(),
            include_triples: true,
            n_subsample_groups: 30,
            subsample_group_size: 30,
            docsim: DocSimConfig::default(),
            clusters: NumClustersConfig::default(),
        }
    }
}

impl PipelineConfig {
    pub fn estimators(&self) -> Result<Vec<EstimatorKind>> {
        self.estimator_names
            .iter()
            .map(|name| name.parse::<EstimatorKind>())
            .collect()
    }
}

/// A review left out of the evaluation and why.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExcludedSr {
    pub sr_id: String,
    pub n_relevant: usize,
    pub reason: String,
}

/// One cell of the significance matrix: the proposed measure against one
/// baseline on one ranker's ground truth.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignificanceEntry {
    pub baseline: String,
    pub ranker: String,
    /// Paired two-tailed t-test p-value over the per-group coefficients.
    pub p_value: Score,
    pub tb_mean_coefficient: Score,
    pub baseline_mean_coefficient: Score,
}

/// Everything the evaluation produces.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub n_reviews_total: usize,
    pub evaluated_sr_ids: Vec<String>,
    pub excluded: Vec<ExcludedSr>,
    pub rankers: Vec<String>,
    pub qualities: Vec<QualityScore>,
    pub estimates: Vec<EstimateRecord>,
    pub pair_correlations: Vec<CorrelationResult>,
    pub triple_sr_ids: Vec<String>,
    pub triple_estimates: Vec<EstimateRecord>,
    pub triple_correlations: Vec<CorrelationResult>,
    pub ablation_correlations: Vec<CorrelationResult>,
    pub significance: Vec<SignificanceEntry>,
    pub model_comparison: ModelComparisonReport,
    /// Mean over reviews of the per-review variance of the proposed
    /// measure's pair values.
    pub mean_tb_pair_variance: Score,
    pub warnings: Vec<String>,
}

impl EvaluationReport {
    /// Per-ranker mean-AP maps, the shape the correlation steps consume.
    pub fn qualities_by_ranker(&self) -> BTreeMap<String, BTreeMap<String, Score>> {
        let mut out: BTreeMap<String, BTreeMap<String, Score>> = BTreeMap::new();
        for q in &self.qualities {
            out.entry(q.ranker.clone())
                .or_default()
                .insert(q.sr_id.clone(), q.mean_ap);
        }
        out
    }

    /// Mean estimates per estimator per review.
    pub fn estimates_by_estimator(&self) -> BTreeMap<String, BTreeMap<String, Score>> {
        group_estimates(&self.estimates)
    }
}

fn group_estimates(records: &[EstimateRecord]) -> BTreeMap<String, BTreeMap<String, Score>> {
    let mut out: BTreeMap<String, BTreeMap<String, Score>> = BTreeMap::new();
    for r in records {
        out.entry(r.estimator.clone())
            .or_default()
            .insert(r.sr_id.clone(), r.mean);
    }
    out
}

/// Build the three ranking models. The embedding-based model is included
/// only when a table is available.
pub fn build_rankers(
    config: &PipelineConfig,
    embeddings: Option<Arc<EmbeddingTable>>,
) -> Vec<Box<dyn SeedRanker>> {
    let mut rankers: Vec<Box<dyn SeedRanker>> = vec![
        Box::new(Bm25Ranker {
            params: config.bm25,
        }),
        Box::new(QlRanker::sdr_lite(config.mu)),
    ];
    if let Some(table) = embeddings {
        rankers.push(Box::new(AesRanker::new(table)));
    }
    rankers
}

/// Check that every requested estimator's resources are present before any
/// computation starts.
pub fn validate_resources(config: &PipelineConfig, inputs: &EvaluationInputs<'_>) -> Result<()> {
    let estimators = config.estimators()?;
    for kind in &estimators {
        if kind.needs_embeddings() && inputs.embeddings.is_none() {
            return Err(Error::MissingResource(format!(
                "estimator {} needs a word-embedding table",
                kind.name()
            )));
        }
        if kind.needs_background() && inputs.background.is_none() {
            return Err(Error::MissingResource(format!(
                "estimator {} needs a background language model",
                kind.name()
            )));
        }
    }
    if inputs.reviews.is_empty() {
        return Err(Error::EmptyCollection);
    }
    Ok(())
}

/// Run the full evaluation.
pub fn run_evaluation(
    config: &PipelineConfig,
    inputs: &EvaluationInputs<'_>,
) -> Result<EvaluationReport> {
    validate_resources(config, inputs)?;
    let estimators = config.estimators()?;
    let mut warnings: Vec<String> = Vec::new();

    // Reviews with fewer than two relevant documents cannot be evaluated:
    // no seed pair exists and average precision is undefined.
    let mut excluded: Vec<ExcludedSr> = Vec::new();
    let mut evaluable: Vec<&SystematicReview> = Vec::new();
    for sr in inputs.reviews {
        if sr.has_min_relevant(2) {
            evaluable.push(sr);
        } else {
            excluded.push(ExcludedSr {
                sr_id: sr.sr_id().to_string(),
                n_relevant: sr.n_relevant(),
                reason: "fewer than 2 relevant documents".to_string(),
            });
        }
    }
    evaluable.sort_by(|a, b| a.sr_id().cmp(b.sr_id()));

    // Ranking qualities, parallel over reviews.
    let rankers = build_rankers(config, inputs.embeddings.clone());
    let ranker_names: Vec<String> = rankers.iter().map(|r| r.name().to_string()).collect();
    type QualityRow = (String, std::result::Result<Vec<QualityScore>, String>);
    let mut quality_rows: Vec<QualityRow> = evaluable
        .par_iter()
        .map(|sr| {
            let mut scores = Vec::with_capacity(rankers.len());
            for ranker in &rankers {
                match sr_quality(sr, ranker.as_ref()) {
                    Ok(q) => scores.push(q),
                    Err(e) => return (sr.sr_id().to_string(), Err(e.to_string())),
                }
            }
            (sr.sr_id().to_string(), Ok(scores))
        })
        .collect();
    quality_rows.sort_by(|a, b| a.0.cmp(&b.0));

    let mut qualities: Vec<QualityScore> = Vec::new();
    let mut evaluated: Vec<&SystematicReview> = Vec::new();
    for (sr_id, row) in quality_rows {
        match row {
            Ok(scores) => {
                qualities.extend(scores);
                evaluated.push(
                    *evaluable
                        .iter()
                        .find(|sr| sr.sr_id() == sr_id)
                        .expect("id came from this list"),
                );
            }
            Err(reason) => {
                warnings.push(format!("review {sr_id} dropped: {reason}"));
                excluded.push(ExcludedSr {
                    sr_id,
                    n_relevant: 0,
                    reason,
                });
            }
        }
    }
    if evaluated.len() < 3 {
        return Err(Error::TooFewPoints {
            need: 3,
            got: evaluated.len(),
        });
    }
    let evaluated_ids: Vec<String> = evaluated.iter().map(|sr| sr.sr_id().to_string()).collect();

    // Estimates, parallel over reviews; the pair sample is drawn once per
    // review and shared across estimators.
    let resources = EstimatorResources {
        embeddings: inputs.embeddings.as_deref(),
        background: inputs.background,
        docsim: config.docsim,
        clusters: config.clusters,
    };
    type EstimateRow = (String, Vec<std::result::Result<EstimateRecord, String>>);
    let mut estimate_rows: Vec<EstimateRow> = evaluated
        .par_iter()
        .map(|sr| {
            let rows = match sample_seed_pairs(sr, config.pair_cap, config.master_seed) {
                Ok(pairs) => estimators
                    .iter()
                    .map(|&kind| {
                        estimate_for_review(kind, sr, &pairs, &resources, config.master_seed)
                            .map_err(|e| e.to_string())
                    })
                    .collect(),
                Err(e) => vec![Err(e.to_string()); estimators.len()],
            };
            (sr.sr_id().to_string(), rows)
        })
        .collect();
    estimate_rows.sort_by(|a, b| a.0.cmp(&b.0));

    let mut estimates: Vec<EstimateRecord> = Vec::new();
    let mut failed_estimators: BTreeMap<String, String> = BTreeMap::new();
    for (sr_id, rows) in estimate_rows {
        for (kind, row) in estimators.iter().zip(rows) {
            match row {
                Ok(record) => estimates.push(record),
                Err(reason) => {
                    failed_estimators
                        .entry(kind.name().to_string())
                        .or_insert_with(|| format!("{sr_id}: {reason}"));
                }
            }
        }
    }
    // An estimator that failed anywhere loses full coverage; drop it.
    if !failed_estimators.is_empty() {
        for (name, first_failure) in &failed_estimators {
            warnings.push(format!("estimator {name} dropped ({first_failure})"));
        }
        estimates.retain(|r| !failed_estimators.contains_key(&r.estimator));
    }

    // Correlation tables.
    let quality_maps = {
        let mut out: BTreeMap<String, BTreeMap<String, Score>> = BTreeMap::new();
        for q in &qualities {
            out.entry(q.ranker.clone())
                .or_default()
                .insert(q.sr_id.clone(), q.mean_ap);
        }
        out
    };
    let estimate_maps = group_estimates(&estimates);
    let mut pair_correlations: Vec<CorrelationResult> = Vec::new();
    let mut ablation_correlations: Vec<CorrelationResult> = Vec::new();
    for (name, per_sr) in &estimate_maps {
        match evaluate_estimator(name, per_sr, &quality_maps) {
            Ok(results) => {
                if name.starts_with("TB-no") {
                    ablation_correlations.extend(results);
                } else {
                    pair_correlations.extend(results);
                }
            }
            Err(e) => warnings.push(format!("estimator {name} not correlated: {e}")),
        }
    }
    // The ablation table also carries the full measure for reference.
    ablation_correlations.extend(
        pair_correlations
            .iter()
            .filter(|r| r.estimator == EstimatorKind::TopicBroadness.name())
            .cloned(),
    );

    // Three-seed protocol over the reviews that support it.
    let mut triple_estimates: Vec<EstimateRecord> = Vec::new();
    let mut triple_correlations: Vec<CorrelationResult> = Vec::new();
    let mut triple_ids: Vec<String> = Vec::new();
    if config.include_triples {
        let triple_capable: Vec<&&SystematicReview> = evaluated
            .iter()
            .filter(|sr| sr.has_min_relevant(3))
            .collect();
        triple_ids = triple_capable
            .iter()
            .map(|sr| sr.sr_id().to_string())
            .collect();
        if triple_capable.len() >= 3 {
            let triple_kinds: Vec<EstimatorKind> = estimators
                .iter()
                .copied()
                .filter(|k| !matches!(k, EstimatorKind::TbNoSeedSim | EstimatorKind::TbNoCandSim))
                .collect();
            let mut rows: Vec<EstimateRow> = triple_capable
                .par_iter()
                .map(|sr| {
                    let rows = match sample_seed_triples(sr, config.triple_cap, config.master_seed)
                    {
                        Ok(triples) => triple_kinds
                            .iter()
                            .map(|&kind| {
                                estimate_for_review_triples(
                                    kind,
                                    sr,
                                    &triples,
                                    &resources,
                                    config.master_seed,
                                )
                                .map_err(|e| e.to_string())
                            })
                            .collect(),
                        Err(e) => vec![Err(e.to_string()); triple_kinds.len()],
                    };
                    (sr.sr_id().to_string(), rows)
                })
                .collect();
            rows.sort_by(|a, b| a.0.cmp(&b.0));
            let mut failed: BTreeMap<String, String> = BTreeMap::new();
            for (sr_id, row) in rows {
                for (kind, r) in triple_kinds.iter().zip(row) {
                    match r {
                        Ok(record) => triple_estimates.push(record),
                        Err(reason) => {
                            failed
                                .entry(kind.name().to_string())
                                .or_insert_with(|| format!("{sr_id}: {reason}"));
                        }
                    }
                }
            }
            for (name, first) in &failed {
                warnings.push(format!("triple estimator {name} dropped ({first})"));
            }
            triple_estimates.retain(|r| !failed.contains_key(&r.estimator));

            // Triple correlations run against the triple-capable subset.
            let triple_quality_maps: BTreeMap<String, BTreeMap<String, Score>> = quality_maps
                .iter()
                .map(|(ranker, per_sr)| {
                    let filtered = per_sr
                        .iter()
                        .filter(|(id, _)| triple_ids.contains(id))
                        .map(|(id, q)| (id.clone(), *q))
                        .collect();
                    (ranker.clone(), filtered)
                })
                .collect();
            for (name, per_sr) in group_estimates(&triple_estimates) {
                match evaluate_estimator(&name, &per_sr, &triple_quality_maps) {
                    Ok(results) => triple_correlations.extend(results),
                    Err(e) => warnings.push(format!("triple estimator {name} not correlated: {e}")),
                }
            }
        } else {
            warnings.push(format!(
                "three-seed protocol skipped: only {} reviews have 3+ relevant documents",
                triple_capable.len()
            ));
        }
    }

    // Subsample significance: the proposed measure against every baseline.
    let significance = significance_matrix(
        config,
        &evaluated_ids,
        &estimate_maps,
        &quality_maps,
        &mut warnings,
    );

    let model_comparison = compare_models(&quality_maps)?;

    let tb_records: Vec<&EstimateRecord> = estimates
        .iter()
        .filter(|r| r.estimator == EstimatorKind::TopicBroadness.name())
        .collect();
    let mean_tb_pair_variance = if tb_records.is_empty() {
        0.0
    } else {
        tb_records.iter().map(|r| r.variance).sum::<Score>() / tb_records.len() as Score
    };

    Ok(EvaluationReport {
        n_reviews_total: inputs.reviews.len(),
        evaluated_sr_ids: evaluated_ids,
        excluded,
        rankers: ranker_names,
        qualities,
        estimates,
        pair_correlations,
        triple_sr_ids: triple_ids,
        triple_estimates,
        triple_correlations,
        ablation_correlations,
        significance,
        model_comparison,
        mean_tb_pair_variance,
        warnings,
    })
}

/// Recompute Spearman coefficients on fixed subsample groups and run the
/// paired t-test of the proposed measure against every other estimator.
fn significance_matrix(
    config: &PipelineConfig,
    evaluated_ids: &[String],
    estimate_maps: &BTreeMap<String, BTreeMap<String, Score>>,
    quality_maps: &BTreeMap<String, BTreeMap<String, Score>>,
    warnings: &mut Vec<String>,
) -> Vec<SignificanceEntry> {
    let tb_name = EstimatorKind::TopicBroadness.name();
    if !estimate_maps.contains_key(tb_name) {
        return Vec::new();
    }
    let mut rng = rng::stream(config.master_seed, "all", "subsample-groups");
    let groups = subsample_groups(
        evaluated_ids,
        config.n_subsample_groups,
        config.subsample_group_size,
        &mut rng,
    );

    // Per estimator per ranker: coefficient per group.
    let mut coeffs: BTreeMap<(String, String), Vec<Score>> = BTreeMap::new();
    'estimator: for (name, per_sr) in estimate_maps {
        for (ranker, quality) in quality_maps {
            let mut per_group = Vec::with_capacity(groups.len());
            for group in &groups {
                let xs: Vec<Score> = group.iter().map(|id| per_sr[id]).collect();
                let ys: Vec<Score> = group.iter().map(|id| quality[id]).collect();
                match spearman(&xs, &ys) {
                    Ok(c) => per_group.push(c.value),
                    Err(e) => {
                        warnings.push(format!(
                            "significance skipped for {name}: subsample group failed ({e})"
                        ));
                        continue 'estimator;
                    }
                }
            }
            coeffs.insert((name.clone(), ranker.clone()), per_group);
        }
    }

    let mut entries = Vec::new();
    for ((name, ranker), baseline_coeffs) in &coeffs {
        if name == tb_name {
            continue;
        }
        let Some(tb_coeffs) = coeffs.get(&(tb_name.to_string(), ranker.clone())) else {
            continue;
        };
        // Compare magnitudes: a coefficient's direction is a sign
        // convention, its strength is what the test compares.
        let tb_abs: Vec<Score> = tb_coeffs.iter().map(|c| c.abs()).collect();
        let base_abs: Vec<Score> = baseline_coeffs.iter().map(|c| c.abs()).collect();
        match significance_test(&tb_abs, &base_abs) {
            Ok(p_value) => entries.push(SignificanceEntry {
                baseline: name.clone(),
                ranker: ranker.clone(),
                p_value,
                tb_mean_coefficient: tb_coeffs.iter().sum::<Score>() / tb_coeffs.len() as Score,
                baseline_mean_coefficient: baseline_coeffs.iter().sum::<Score>()
                    / baseline_coeffs.len() as Score,
            }),
            Err(e) => warnings.push(format!("significance failed for {name}/{ranker}: {e}")),
        }
    }
    entries
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{synth_embeddings, synth_generate, SynthConfig};

    fn small_inputs() -> (Vec<SystematicReview>, Arc<EmbeddingTable>, LanguageModel) {
        let config = SynthConfig {
            n_srs: 8,
            docs_per_sr_range: Some((18, 40)),
            overlap: 0.6,
            seed: 9,
            ..Default::default()
        };
        let reviews = synth_generate(&config).unwrap();
        let table = Arc::new(synth_embeddings(config.vocab_size, 16, 9));
        let mut counts: BTreeMap<String, u64> = BTreeMap::new();
        for sr in &reviews {
            for (term, cf) in sr.candidates().stats().cf_iter() {
                *counts.entry(term.to_string()).or_insert(0) += cf;
            }
        }
        let background = LanguageModel::from_counts(counts).unwrap();
        (reviews, table, background)
    }

    fn fast_config() -> PipelineConfig {
        PipelineConfig {
            n_subsample_groups: 8,
            subsample_group_size: 6,
            clusters: NumClustersConfig {
                k_max: 6,
                ..Default::default()
            },
            ..Default::default()
        }
    }

    #[test]
    fn full_pipeline_runs_on_synthetic_reviews() {
        let (reviews, table, background) = small_inputs();
        let inputs = EvaluationInputs {
            reviews: &reviews,
            embeddings: Some(table),
            background: Some(&background),
        };
        let report = run_evaluation(&fast_config(), &inputs).unwrap();

        assert_eq!(report.evaluated_sr_ids.len(), 8);
        assert_eq!(report.rankers, vec!["bm25", "sdr-lite", "aes"]);
        // 3 rankers x 8 reviews quality rows.
        assert_eq!(report.qualities.len(), 24);
        let tb_rows = report
            .estimates
            .iter()
            .filter(|r| r.estimator == "TB")
            .count();
        assert_eq!(tb_rows, 8);
        // Pair table: 18 estimators x 3 rankers x 2 coefficients, minus any
        // estimator that came out constant on this tiny family (undefined
        // correlation, reported as a warning).
        let constant_skips = report
            .warnings
            .iter()
            .filter(|w| w.starts_with("estimator") && w.contains("not correlated"))
            .count();
        assert_eq!(report.pair_correlations.len(), (18 - constant_skips) * 6);
        for name in ["TB", "QLen", "collSize", "avgIDF", "SCS"] {
            assert!(
                report.pair_correlations.iter().any(|r| r.estimator == name),
                "missing {name}"
            );
        }
        // Ablations: 2 variants + TB reference, x 6.
        assert_eq!(report.ablation_correlations.len(), 3 * 6);
        // Triples ran (5 relevant docs each).
        assert_eq!(report.triple_sr_ids.len(), 8);
        assert!(!report.triple_correlations.is_empty());
        // Significance matrix produced entries.
        assert!(!report.significance.is_empty());
        assert!(report.mean_tb_pair_variance >= 0.0);
    }

    #[test]
    fn deterministic_across_runs() {
        let (reviews, table, background) = small_inputs();
        let inputs = EvaluationInputs {
            reviews: &reviews,
            embeddings: Some(table),
            background: Some(&background),
        };
        let a = run_evaluation(&fast_config(), &inputs).unwrap();
        let b = run_evaluation(&fast_config(), &inputs).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn estimator_subset_restricts_the_table() {
        let (reviews, _, _) = small_inputs();
        let inputs = EvaluationInputs {
            reviews: &reviews,
            embeddings: None,
            background: None,
        };
        let config = PipelineConfig {
            estimator_names: vec!["TB".to_string()],
            ..fast_config()
        };
        let report = run_evaluation(&config, &inputs).unwrap();
        assert!(report.pair_correlations.iter().all(|r| r.estimator == "TB"));
        assert_eq!(report.pair_correlations.len(), 4); // 2 rankers x 2 coefficients
    }

    #[test]
    fn missing_resources_fail_fast() {
        let (reviews, _, _) = small_inputs();
        let inputs = EvaluationInputs {
            reviews: &reviews,
            embeddings: None,
            background: None,
        };
        let config = PipelineConfig {
            estimator_names: vec!["avgDocSim".to_string()],
            ..fast_config()
        };
        assert!(matches!(
            run_evaluation(&config, &inputs),
            Err(Error::MissingResource(_))
        ));
    }

    #[test]
    fn reviews_without_two_relevant_are_excluded() {
        let (mut reviews, _, _) = small_inputs();
        let lonely = {
            use crate::corpus::Document;
            use crate::ingest::Label;
            let docs: Vec<Document> = (0..6)
                .map(|i| {
                    Document::from_tokens(
                        format!("LON-{i}"),
                        vec!["alpha".to_string(), format!("tok{i}")],
                    )
                })
                .collect();
            let mut labels = BTreeMap::new();
            labels.insert("LON-0".to_string(), Label::Relevant);
            SystematicReview::assemble("LONELY", docs, &[], labels.clone(), labels)
                .unwrap()
                .review
        };
        reviews.push(lonely);
        let inputs = EvaluationInputs {
            reviews: &reviews,
            embeddings: None,
            background: None,
        };
        let config = PipelineConfig {
            estimator_names: vec!["TB".to_string(), "QLen".to_string()],
            ..fast_config()
        };
        let report = run_evaluation(&config, &inputs).unwrap();
        assert_eq!(report.n_reviews_total, 9);
        assert_eq!(report.evaluated_sr_ids.len(), 8);
        assert_eq!(report.excluded.len(), 1);
        assert_eq!(report.excluded[0].sr_id, "LONELY");
        assert_eq!(report.excluded[0].n_relevant, 1);
    }
}
