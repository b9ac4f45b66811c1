//! `rankgauge report`: human-readable digest of an evaluation bundle.

use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::{Context, anyhow};
use clap::Args;
use serde::Deserialize;

use rankgauge::eval::{CoefficientType, CorrelationResult};
use rankgauge::report::Summary;

use crate::{usage_err, CmdResult};

#[derive(Args)]
pub struct ReportArgs {
    /// Report bundle directory written by `rankgauge evaluate`.
    #[arg(long)]
    pub from: PathBuf,
}

#[derive(Deserialize)]
struct Wrapped<T> {
    run_config_hash: String,
    data: T,
}

fn load_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> anyhow::Result<Wrapped<T>> {
    let bytes =
        std::fs::read(path).with_context(|| format!("cannot open {}", path.display()))?;
    Ok(serde_json::from_slice(&bytes)?)
}

pub fn run(args: ReportArgs) -> CmdResult {
    let summary: Wrapped<Summary> =
        load_json(&args.from.join("summary.json")).map_err(usage_err)?;
    let pairs: Wrapped<Vec<CorrelationResult>> =
        load_json(&args.from.join("table_pairs.json")).map_err(usage_err)?;
    if summary.run_config_hash != pairs.run_config_hash {
        return Err(usage_err(anyhow!(
            "bundle is inconsistent: summary and table hashes differ"
        )));
    }

    let s = &summary.data;
    println!("run config hash : {}", summary.run_config_hash);
    println!(
        "reviews         : {} evaluated / {} total ({} excluded)",
        s.n_evaluated, s.n_reviews_total, s.n_excluded
    );
    println!("rankers         : {}", s.rankers.join(", "));
    println!(
        "quality spread  : mean pairwise model diff {:.3} (sd {:.3})",
        s.mean_pairwise_quality_diff, s.stdev_pairwise_quality_diff
    );
    for (pair, rho) in &s.cross_model_spearman {
        println!("cross-model rho : {pair} = {rho:.3}");
    }
    for (ranker, gap) in &s.quality_gaps {
        println!("quality gap     : {ranker} max-min = {gap:.3}");
    }
    println!("TB pair variance: {:.6} (mean over reviews)", s.mean_tb_pair_variance);

    // Top estimators by |Spearman| per ranker.
    let mut by_ranker: BTreeMap<&str, Vec<&CorrelationResult>> = BTreeMap::new();
    for r in pairs
        .data
        .iter()
        .filter(|r| r.coefficient == CoefficientType::Spearman)
    {
        by_ranker.entry(r.ranker.as_str()).or_default().push(r);
    }
    for (ranker, mut rows) in by_ranker {
        rows.sort_by(|a, b| b.value.abs().total_cmp(&a.value.abs()));
        println!("\nstrongest estimators vs {ranker} (Spearman):");
        for r in rows.iter().take(5) {
            println!(
                "  {:<14} rho = {:+.3}  (p = {:.2e})",
                r.estimator, r.value, r.p_value
            );
        }
    }
    if !s.warnings.is_empty() {
        println!("\nwarnings:");
        for w in &s.warnings {
            println!("  {w}");
        }
    }
    Ok(())
}
