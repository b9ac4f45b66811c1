//! Report serialization: the CSV and JSON files one evaluation run leaves
//! behind.
//!
//! Every file embeds the run-config hash (CSV files as a leading `#` comment
//! line, JSON files as a top-level field) and is written atomically via a
//! temp file and rename. Two runs with an equal config produce byte-identical
//! output.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::estimators::{EstimateRecord, EstimatorKind, QppMeasure};
use crate::eval::{CoefficientType, CorrelationResult};
use crate::pipeline::EvaluationReport;
use crate::rng::fnv1a;
use crate::{Result, Score};

/// Run identity embedded in every output file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunMeta {
    pub config_hash: String,
    /// The full run configuration, echoed verbatim.
    pub config: serde_json::Value,
    /// Tokenizer settings in their `key=value` form.
    pub tokenizer_config: String,
}

impl RunMeta {
    /// Hash a serializable config into the run identity.
    pub fn for_config<C: Serialize>(config: &C, tokenizer_kv: String) -> Result<Self> {
        let json = serde_json::to_value(config)?;
        let canonical = serde_json::to_string(&json)?;
        Ok(Self {
            config_hash: format!("{:016x}", fnv1a(canonical.as_bytes())),
            config: json,
            tokenizer_config: tokenizer_kv,
        })
    }
}

/// Write `bytes` to `path` through a temp file and rename.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    let tmp = path.with_extension(format!(
        "{}.tmp",
        path.extension().and_then(|e| e.to_str()).unwrap_or("out")
    ));
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.flush()?;
    }
    std::fs::rename(&tmp, path)?;
    Ok(())
}

fn hash_comment(meta: &RunMeta) -> String {
    format!("# run_config_hash: {}\n", meta.config_hash)
}

fn json_with_hash<T: Serialize>(meta: &RunMeta, data: &T) -> Result<Vec<u8>> {
    #[derive(Serialize)]
    struct Wrapper<'a, T> {
        run_config_hash: &'a str,
        data: &'a T,
    }
    let mut bytes = serde_json::to_vec_pretty(&Wrapper {
        run_config_hash: &meta.config_hash,
        data,
    })?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// Canonical row order for the correlation tables: baselines in their usual
/// listing, the proposed measure last.
fn estimator_order(name: &str) -> usize {
    let canon: Vec<&'static str> = QppMeasure::ALL
        .iter()
        .map(|m| m.name())
        .chain([
            EstimatorKind::CollSize.name(),
            EstimatorKind::NumClusters.name(),
            EstimatorKind::CollClarity.name(),
            EstimatorKind::AvgDocSim.name(),
            EstimatorKind::SumDocSim.name(),
            EstimatorKind::MaxDocSim.name(),
            EstimatorKind::StdevDocSim.name(),
            EstimatorKind::TbNoCandSim.name(),
            EstimatorKind::TbNoSeedSim.name(),
            EstimatorKind::TopicBroadness.name(),
        ])
        .collect();
    canon.iter().position(|c| *c == name).unwrap_or(canon.len())
}

/// Canonical ranker column order.
fn ranker_order(name: &str) -> usize {
    ["bm25", "sdr-lite", "aes"]
        .iter()
        .position(|r| *r == name)
        .unwrap_or(3)
}

/// One estimate row in `estimates.csv` (per-pair values live in the JSON
/// report, not the CSV).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EstimateCsvRow {
    pub sr_id: String,
    pub estimator: String,
    pub mean: Score,
    pub variance: Score,
    pub n_pairs: usize,
    pub rng_seed: u64,
}

impl From<&EstimateRecord> for EstimateCsvRow {
    fn from(r: &EstimateRecord) -> Self {
        Self {
            sr_id: r.sr_id.clone(),
            estimator: r.estimator.clone(),
            mean: r.mean,
            variance: r.variance,
            n_pairs: r.n_pairs,
            rng_seed: r.rng_seed,
        }
    }
}

fn estimates_csv(meta: &RunMeta, records: &[EstimateRecord]) -> Result<Vec<u8>> {
    let mut buf = hash_comment(meta).into_bytes();
    let mut w = csv::Writer::from_writer(&mut buf);
    let mut rows: Vec<EstimateCsvRow> = records.iter().map(EstimateCsvRow::from).collect();
    rows.sort_by(|a, b| (&a.estimator, &a.sr_id).cmp(&(&b.estimator, &b.sr_id)));
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    drop(w);
    Ok(buf)
}

/// Read back an `estimates.csv` file (for the percentile reference).
pub fn read_estimates_csv(path: &Path) -> Result<Vec<EstimateCsvRow>> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_path(path)?;
    let mut rows = Vec::new();
    for row in reader.deserialize() {
        rows.push(row?);
    }
    Ok(rows)
}

fn qualities_csv(meta: &RunMeta, report: &EvaluationReport) -> Result<Vec<u8>> {
    #[derive(Serialize)]
    struct Row<'a> {
        sr_id: &'a str,
        ranker: &'a str,
        mean_ap: Score,
        n_seeds: usize,
        skipped_seeds: usize,
    }
    let mut buf = hash_comment(meta).into_bytes();
    let mut w = csv::Writer::from_writer(&mut buf);
    let mut qualities: Vec<_> = report.qualities.iter().collect();
    qualities.sort_by(|a, b| (&a.sr_id, &a.ranker).cmp(&(&b.sr_id, &b.ranker)));
    for q in qualities {
        w.serialize(Row {
            sr_id: &q.sr_id,
            ranker: &q.ranker,
            mean_ap: q.mean_ap,
            n_seeds: q.per_seed_ap.len(),
            skipped_seeds: q.skipped_seeds.len(),
        })?;
    }
    w.flush()?;
    drop(w);
    Ok(buf)
}

/// Pivot correlation results into one row per estimator with ranker ×
/// coefficient columns, mirroring the evaluation tables.
fn correlation_table_csv(meta: &RunMeta, results: &[CorrelationResult]) -> Result<Vec<u8>> {
    let mut rankers: Vec<&str> = results.iter().map(|r| r.ranker.as_str()).collect();
    rankers.sort_by_key(|r| ranker_order(r));
    rankers.dedup();
    let mut estimators: Vec<&str> = results.iter().map(|r| r.estimator.as_str()).collect();
    estimators.sort_by_key(|e| estimator_order(e));
    estimators.dedup();

    let cell: BTreeMap<(&str, &str, CoefficientType), &CorrelationResult> = results
        .iter()
        .map(|r| ((r.estimator.as_str(), r.ranker.as_str(), r.coefficient), r))
        .collect();

    let mut buf = hash_comment(meta).into_bytes();
    let mut w = csv::Writer::from_writer(&mut buf);
    let mut header = vec!["estimator".to_string()];
    for ranker in &rankers {
        for coeff in ["spearman", "pearson"] {
            header.push(format!("{ranker}_{coeff}"));
            header.push(format!("{ranker}_{coeff}_p"));
        }
    }
    w.write_record(&header)?;
    for estimator in &estimators {
        let mut row = vec![estimator.to_string()];
        for ranker in &rankers {
            for coeff in [CoefficientType::Spearman, CoefficientType::Pearson] {
                match cell.get(&(estimator, ranker, coeff)) {
                    Some(r) => {
                        row.push(format!("{:.6}", r.value));
                        row.push(format!("{:.3e}", r.p_value));
                    }
                    None => {
                        row.push(String::new());
                        row.push(String::new());
                    }
                }
            }
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    drop(w);
    Ok(buf)
}

fn significance_csv(meta: &RunMeta, report: &EvaluationReport) -> Result<Vec<u8>> {
    #[derive(Serialize)]
    struct Row<'a> {
        baseline: &'a str,
        ranker: &'a str,
        p_value: String,
        tb_mean_coefficient: String,
        baseline_mean_coefficient: String,
    }
    let mut buf = hash_comment(meta).into_bytes();
    let mut w = csv::Writer::from_writer(&mut buf);
    let mut entries: Vec<_> = report.significance.iter().collect();
    entries.sort_by_key(|e| (estimator_order(&e.baseline), ranker_order(&e.ranker)));
    for e in entries {
        w.serialize(Row {
            baseline: &e.baseline,
            ranker: &e.ranker,
            p_value: format!("{:.3e}", e.p_value),
            tb_mean_coefficient: format!("{:.6}", e.tb_mean_coefficient),
            baseline_mean_coefficient: format!("{:.6}", e.baseline_mean_coefficient),
        })?;
    }
    w.flush()?;
    drop(w);
    Ok(buf)
}

/// Summary block: counts, exclusions, headline statistics.
#[derive(Debug, Serialize, Deserialize)]
pub struct Summary {
    pub n_reviews_total: usize,
    pub n_evaluated: usize,
    pub n_excluded: usize,
    pub excluded: Vec<crate::pipeline::ExcludedSr>,
    pub rankers: Vec<String>,
    pub mean_tb_pair_variance: Score,
    pub mean_pairwise_quality_diff: Score,
    pub stdev_pairwise_quality_diff: Score,
    pub quality_gaps: BTreeMap<String, Score>,
    pub cross_model_spearman: BTreeMap<String, Score>,
    pub warnings: Vec<String>,
    pub tokenizer_config: String,
}

/// Write the full report bundle into `dir`, returning the files written.
pub fn write_report_bundle(
    dir: &Path,
    report: &EvaluationReport,
    meta: &RunMeta,
) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let mut emit = |name: &str, bytes: Vec<u8>| -> Result<()> {
        let path = dir.join(name);
        atomic_write(&path, &bytes)?;
        written.push(path);
        Ok(())
    };

    let summary = Summary {
        n_reviews_total: report.n_reviews_total,
        n_evaluated: report.evaluated_sr_ids.len(),
        n_excluded: report.excluded.len(),
        excluded: report.excluded.clone(),
        rankers: report.rankers.clone(),
        mean_tb_pair_variance: report.mean_tb_pair_variance,
        mean_pairwise_quality_diff: report.model_comparison.mean_pairwise_diff,
        stdev_pairwise_quality_diff: report.model_comparison.stdev_pairwise_diff,
        quality_gaps: report.model_comparison.quality_gaps.clone(),
        cross_model_spearman: report.model_comparison.cross_model_spearman.clone(),
        warnings: report.warnings.clone(),
        tokenizer_config: meta.tokenizer_config.clone(),
    };
    emit("summary.json", json_with_hash(meta, &summary)?)?;
    emit("qualities.csv", qualities_csv(meta, report)?)?;
    emit("estimates.csv", estimates_csv(meta, &report.estimates)?)?;
    emit(
        "table_pairs.csv",
        correlation_table_csv(meta, &report.pair_correlations)?,
    )?;
    emit(
        "table_pairs.json",
        json_with_hash(meta, &report.pair_correlations)?,
    )?;
    emit(
        "ablation.csv",
        correlation_table_csv(meta, &report.ablation_correlations)?,
    )?;
    emit(
        "ablation.json",
        json_with_hash(meta, &report.ablation_correlations)?,
    )?;
    emit("significance.csv", significance_csv(meta, report)?)?;
    emit(
        "significance.json",
        json_with_hash(meta, &report.significance)?,
    )?;
    emit(
        "model_comparison.json",
        json_with_hash(meta, &report.model_comparison)?,
    )?;
    if !report.triple_estimates.is_empty() {
        emit(
            "triple_estimates.csv",
            estimates_csv(meta, &report.triple_estimates)?,
        )?;
        emit(
            "table_triples.csv",
            correlation_table_csv(meta, &report.triple_correlations)?,
        )?;
        emit(
            "table_triples.json",
            json_with_hash(meta, &report.triple_correlations)?,
        )?;
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct ToyConfig {
        alpha: u32,
        name: String,
    }

    #[test]
    fn meta_hash_is_stable_and_sensitive() {
        let a = RunMeta::for_config(
            &ToyConfig {
                alpha: 1,
                name: "x".into(),
            },
            String::new(),
        )
        .unwrap();
        let b = RunMeta::for_config(
            &ToyConfig {
                alpha: 1,
                name: "x".into(),
            },
            String::new(),
        )
        .unwrap();
        let c = RunMeta::for_config(
            &ToyConfig {
                alpha: 2,
                name: "x".into(),
            },
            String::new(),
        )
        .unwrap();
        assert_eq!(a.config_hash, b.config_hash);
        assert_ne!(a.config_hash, c.config_hash);
        assert_eq!(a.config_hash.len(), 16);
    }

    #[test]
    fn atomic_write_replaces_content() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("nested/out.csv");
        atomic_write(&path, b"first").unwrap();
        atomic_write(&path, b"second").unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), b"second");
        // No temp residue.
        let entries: Vec<_> = std::fs::read_dir(path.parent().unwrap())
            .unwrap()
            .map(|e| e.unwrap().file_name())
            .collect();
        assert_eq!(entries.len(), 1);
    }

    #[test]
    fn estimates_csv_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let meta = RunMeta::for_config(&ToyConfig { alpha: 1, name: "t".into() }, String::new())
            .unwrap();
        let records = vec![
            EstimateRecord::from_values("CD2", "TB", vec![-0.25, -0.5], 9),
            EstimateRecord::from_values("CD1", "TB", vec![-0.125], 9),
            EstimateRecord::from_values("CD1", "QLen", vec![60.0], 0),
        ];
        let bytes = estimates_csv(&meta, &records).unwrap();
        let path = dir.path().join("estimates.csv");
        atomic_write(&path, &bytes).unwrap();
        let rows = read_estimates_csv(&path).unwrap();
        assert_eq!(rows.len(), 3);
        // Sorted by estimator then review id.
        assert_eq!(rows[0].estimator, "QLen");
        assert_eq!(rows[1].sr_id, "CD1");
        assert_eq!(rows[2].sr_id, "CD2");
        assert_eq!(rows[2].mean, -0.375);
        // Hash comment included.
        let text = String::from_utf8(bytes).unwrap();
        assert!(text.starts_with(&format!("# run_config_hash: {}", meta.config_hash)));
    }

    #[test]
    fn correlation_table_orders_proposed_last() {
        let meta = RunMeta::for_config(&ToyConfig { alpha: 1, name: "t".into() }, String::new())
            .unwrap();
        let mk = |estimator: &str, ranker: &str, coeff, value| CorrelationResult {
            estimator: estimator.into(),
            ranker: ranker.into(),
            coefficient: coeff,
            value,
            p_value: 0.01,
            n: 10,
        };
        let results = vec![
            mk("TB", "bm25", CoefficientType::Spearman, -0.5),
            mk("TB", "bm25", CoefficientType::Pearson, -0.7),
            mk("QLen", "bm25", CoefficientType::Spearman, 0.2),
            mk("QLen", "bm25", CoefficientType::Pearson, 0.18),
        ];
        let bytes = correlation_table_csv(&meta, &results).unwrap();
        let text = String::from_utf8(bytes).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[1].starts_with("estimator,bm25_spearman"));
        assert!(lines[2].starts_with("QLen,"));
        assert!(lines[3].starts_with("TB,"));
    }
}
