//! Correlating estimator outputs with ground-truth ranking quality.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result, Score};

use super::correlation::{pearson, spearman};

/// Which coefficient a result carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoefficientType {
    Spearman,
    Pearson,
}

impl fmt::Display for CoefficientType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoefficientType::Spearman => "spearman",
            CoefficientType::Pearson => "pearson",
        })
    }
}

/// One estimator-versus-ranker correlation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationResult {
    pub estimator: String,
    pub ranker: String,
    pub coefficient: CoefficientType,
    pub value: Score,
    pub p_value: Score,
    pub n: usize,
}

/// Correlate one estimator's per-review estimates against each ranker's
/// per-review mean AP. Produces one Spearman and one Pearson result per
/// ranker. The estimate and quality maps must cover identical review sets.
pub fn evaluate_estimator(
    estimator: &str,
    estimates: &BTreeMap<String, Score>,
    qualities_by_ranker: &BTreeMap<String, BTreeMap<String, Score>>,
) -> Result<Vec<CorrelationResult>> {
    let mut results = Vec::new();
    for (ranker, qualities) in qualities_by_ranker {
        let mut missing: Vec<String> = estimates
            .keys()
            .filter(|id| !qualities.contains_key(*id))
            .cloned()
            .collect();
        missing.extend(
            qualities
                .keys()
                .filter(|id| !estimates.contains_key(*id))
                .cloned(),
        );
        if !missing.is_empty() {
            missing.sort();
            missing.dedup();
            return Err(Error::CoverageMismatch(missing));
        }

        // BTreeMap iteration gives a stable, shared review order.
        let xs: Vec<Score> = estimates.values().copied().collect();
        let ys: Vec<Score> = estimates.keys().map(|id| qualities[id]).collect();
        let s = spearman(&xs, &ys)?;
        let p = pearson(&xs, &ys)?;
        results.push(CorrelationResult {
            estimator: estimator.to_string(),
            ranker: ranker.clone(),
            coefficient: CoefficientType::Spearman,
            value: s.value,
            p_value: s.p_value,
            n: s.n,
        });
        results.push(CorrelationResult {
            estimator: estimator.to_string(),
            ranker: ranker.clone(),
            coefficient: CoefficientType::Pearson,
            value: p.value,
            p_value: p.p_value,
            n: p.n,
        });
    }
    Ok(results)
}
