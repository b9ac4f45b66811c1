//! `rankgauge estimate`: the broadness-based ranking-quality estimate for
//! one review from explicitly given seed documents.

use std::path::PathBuf;

use anyhow::anyhow;
use clap::Args;
use serde::Serialize;

use rankgauge::estimators::{
    tb_triples_min, topic_broadness, EstimateRecord, SeedPair, TripleSample,
};
use rankgauge::math::stats;
use rankgauge::report::read_estimates_csv;
use rankgauge::Score;

use crate::corpus_io::{self, load_review};
use crate::{runtime_err, usage_err, CmdResult, CorpusArgs};

#[derive(Args)]
pub struct EstimateArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    /// Review to estimate.
    #[arg(long)]
    pub sr: String,
    /// Seed document ids (comma separated; at least two). Two seeds use the
    /// pair measure, three the triple-minimum rule, more the all-pairs mean.
    #[arg(long, value_delimiter = ',', required = true)]
    pub seeds: Vec<String>,
    /// Report bundle of a previous `evaluate` run; enables the percentile
    /// against its stored estimates.
    #[arg(long)]
    pub reference: Option<PathBuf>,
}

#[derive(Serialize)]
struct EstimateOutput {
    sr_id: String,
    seed_ids: Vec<String>,
    estimator: String,
    protocol: &'static str,
    /// Raw topic-broadness value (non-positive).
    tb_mean: Score,
    /// The ranking-quality estimate: the negated broadness.
    quality_estimate: Score,
    variance: Score,
    n_pairs: usize,
    /// Percent of reference reviews whose quality estimate is at or below
    /// this one; absent without `--reference`.
    #[serde(skip_serializing_if = "Option::is_none")]
    percentile: Option<Score>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reference_size: Option<usize>,
}

pub fn run(args: EstimateArgs) -> CmdResult {
    let mut seeds = args.seeds.clone();
    seeds.sort();
    seeds.dedup();
    if seeds.len() < 2 {
        return Err(usage_err(anyhow!(
            "the estimate assumes at least two known-relevant seed documents; got {}",
            seeds.len()
        )));
    }

    let tokenizer =
        corpus_io::load_tokenizer(args.corpus.tokenizer_config.as_deref()).map_err(usage_err)?;
    let manifest = corpus_io::read_manifest(&args.corpus.corpus).map_err(usage_err)?;
    let entry = manifest
        .reviews
        .iter()
        .find(|e| e.sr_id == args.sr)
        .ok_or_else(|| usage_err(anyhow!("unknown systematic review `{}`", args.sr)))?;
    let review = load_review(&args.corpus.corpus, entry, &tokenizer).map_err(runtime_err)?;
    for id in &seeds {
        if review.candidates().get(id).is_none() {
            return Err(usage_err(anyhow!(
                "unknown document `{id}` in `{}`",
                args.sr
            )));
        }
    }

    let (record, protocol): (EstimateRecord, &'static str) = if seeds.len() == 3 {
        let triples = TripleSample {
            triples: vec![(seeds[0].clone(), seeds[1].clone(), seeds[2].clone())],
            rng_seed: 0,
        };
        (
            tb_triples_min(&review, &triples).map_err(runtime_err)?,
            "triple-minimum",
        )
    } else {
        let mut values = Vec::new();
        for i in 0..seeds.len() {
            for j in (i + 1)..seeds.len() {
                let s1 = review.candidates().get(&seeds[i]).expect("checked above");
                let s2 = review.candidates().get(&seeds[j]).expect("checked above");
                values.push(
                    topic_broadness(SeedPair::new(s1, s2), review.candidates())
                        .map_err(runtime_err)?,
                );
            }
        }
        (
            EstimateRecord::from_values(&args.sr, "TB", values, 0),
            if seeds.len() == 2 {
                "single-pair"
            } else {
                "all-pairs-mean"
            },
        )
    };

    let quality_estimate = -record.mean;
    let (percentile, reference_size) = match &args.reference {
        None => (None, None),
        Some(dir) => {
            let rows = read_estimates_csv(&dir.join("estimates.csv")).map_err(usage_err)?;
            let reference: Vec<Score> = rows
                .iter()
                .filter(|r| r.estimator == "TB")
                .map(|r| -r.mean)
                .collect();
            if reference.is_empty() {
                return Err(usage_err(anyhow!(
                    "reference bundle {} holds no TB estimates",
                    dir.display()
                )));
            }
            let at_or_below = reference
                .iter()
                .filter(|&&q| q <= quality_estimate)
                .count();
            (
                Some(100.0 * at_or_below as Score / reference.len() as Score),
                Some(reference.len()),
            )
        }
    };

    let output = EstimateOutput {
        sr_id: args.sr.clone(),
        seed_ids: seeds,
        estimator: "TB".to_string(),
        protocol,
        tb_mean: record.mean,
        quality_estimate,
        variance: stats::population_variance(&record.per_pair_values),
        n_pairs: record.n_pairs,
        percentile,
        reference_size,
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&output).map_err(runtime_err)?
    );
    Ok(())
}
