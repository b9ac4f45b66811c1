//! `rankgauge evaluate`: the full experiment pipeline over an ingested
//! corpus or a generated synthetic family.

use std::path::PathBuf;
use std::sync::Arc;

use anyhow::anyhow;
use clap::Args;

use rankgauge::corpus::LanguageModel;
use rankgauge::estimators::EstimatorKind;
use rankgauge::eval::{synth_embeddings, synth_generate, SynthConfig};
use rankgauge::ingest::{load_background_counts, EmbeddingTable};
use rankgauge::pipeline::{run_evaluation, validate_resources, EvaluationInputs, PipelineConfig};
use rankgauge::report::write_report_bundle;

use crate::config::RunConfig;
use crate::corpus_io::{self, write_json_pretty};
use crate::{runtime_err, usage_err, CmdResult};

#[derive(Args)]
pub struct EvaluateArgs {
    /// Ingested corpus directory; omit with --synthetic.
    #[arg(long, required_unless_present = "synthetic")]
    pub corpus: Option<PathBuf>,
    /// Tokenizer config file (`key=value` lines).
    #[arg(long)]
    pub tokenizer_config: Option<PathBuf>,
    /// Run on a generated synthetic review family instead of a corpus.
    #[arg(long)]
    pub synthetic: bool,
    /// Word2vec binary embeddings (needed by aes and the embedding
    /// estimators; synthetic mode generates its own).
    #[arg(long)]
    pub embeddings: Option<PathBuf>,
    /// Background term-count file (term<TAB>count) for collClarity;
    /// synthetic mode builds one from the generated corpus.
    #[arg(long)]
    pub background: Option<PathBuf>,
    /// Output directory for the report bundle.
    #[arg(long)]
    pub out: PathBuf,
    /// Estimators to run (comma separated); defaults to all of them plus
    /// the ablation variants.
    #[arg(long, value_delimiter = ',')]
    pub estimators: Option<Vec<String>>,
    /// Master seed driving every random choice.
    #[arg(long, default_value_t = 42)]
    pub master_seed: u64,
    /// BM25 k1.
    #[arg(long, default_value_t = 1.2)]
    pub k1: f64,
    /// BM25 b.
    #[arg(long, default_value_t = 0.75)]
    pub b: f64,
    /// Dirichlet smoothing for the query-likelihood ranker.
    #[arg(long, default_value_t = 1000.0)]
    pub mu: f64,
    /// Cap on sampled seed pairs per review.
    #[arg(long, default_value_t = 30)]
    pub pair_cap: usize,
    /// Cap on sampled seed triples per review.
    #[arg(long, default_value_t = 30)]
    pub triple_cap: usize,
    /// Skip the three-seed protocol.
    #[arg(long)]
    pub no_triples: bool,
    /// Subsample groups for the significance test.
    #[arg(long, default_value_t = 30)]
    pub groups: usize,
    /// Reviews per subsample group.
    #[arg(long, default_value_t = 30)]
    pub group_size: usize,
    /// Synthetic mode: number of reviews.
    #[arg(long, default_value_t = 50)]
    pub synth_srs: usize,
    /// Synthetic mode: candidates per review.
    #[arg(long, default_value_t = 64)]
    pub synth_docs_per_sr: usize,
    /// Synthetic mode: vocabulary size.
    #[arg(long, default_value_t = 400)]
    pub synth_vocab: usize,
    /// Synthetic mode: topic-mixture overlap in [0, 1].
    #[arg(long, default_value_t = 0.5)]
    pub synth_overlap: f64,
    /// Synthetic mode: draw collection sizes uniformly from LO..=HI.
    #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
    pub synth_size_range: Option<Vec<usize>>,
    /// Synthetic mode: embedding dimension.
    #[arg(long, default_value_t = 32)]
    pub synth_embedding_dim: usize,
    /// Synthetic mode: also write the generated family as an ingested
    /// corpus so `estimate` and `rank` can read it.
    #[arg(long)]
    pub save_corpus: Option<PathBuf>,
}

pub fn run(args: EvaluateArgs) -> CmdResult {
    let tokenizer =
        corpus_io::load_tokenizer(args.tokenizer_config.as_deref()).map_err(usage_err)?;
    let estimator_names = match &args.estimators {
        Some(names) => {
            for name in names {
                name.parse::<EstimatorKind>().map_err(usage_err)?;
            }
            names.clone()
        }
        None => EstimatorKind::all_with_ablations()
            .into_iter()
            .map(|k| k.name().to_string())
            .collect(),
    };
    let pipeline = PipelineConfig {
        tokenizer,
        bm25: rankgauge::rankers::Bm25Params {
            k1: args.k1,
            b: args.b,
        },
        mu: args.mu,
        pair_cap: args.pair_cap,
        triple_cap: args.triple_cap,
        master_seed: args.master_seed,
        estimator_names,
        include_triples: !args.no_triples,
        n_subsample_groups: args.groups,
        subsample_group_size: args.group_size,
        ..Default::default()
    };

    let synthetic = if args.synthetic {
        Some(SynthConfig {
            n_srs: args.synth_srs,
            docs_per_sr: args.synth_docs_per_sr,
            vocab_size: args.synth_vocab,
            overlap: args.synth_overlap,
            seed: args.master_seed,
            docs_per_sr_range: args
                .synth_size_range
                .as_ref()
                .map(|r| (r[0], r[1])),
            ..Default::default()
        })
    } else {
        None
    };

    let run_config = RunConfig {
        command: "evaluate".to_string(),
        corpus_dir: args.corpus.clone(),
        cache_dir: None,
        embeddings_path: args.embeddings.clone(),
        background_path: args.background.clone(),
        output_dir: Some(args.out.clone()),
        pipeline: pipeline.clone(),
        synthetic: synthetic.clone(),
    };
    let meta = run_config.meta().map_err(runtime_err)?;

    // Assemble inputs; every validation failure must precede computation.
    let (reviews, embeddings, background) = if let Some(synth) = &synthetic {
        let reviews = synth_generate(synth).map_err(usage_err)?;
        if let Some(dir) = &args.save_corpus {
            corpus_io::write_reviews_as_corpus(dir, &reviews, &meta.config_hash)
                .map_err(runtime_err)?;
        }
        let embeddings = Arc::new(synth_embeddings(
            synth.vocab_size,
            args.synth_embedding_dim,
            args.master_seed,
        ));
        let mut counts: std::collections::BTreeMap<String, u64> = Default::default();
        for sr in &reviews {
            for (term, cf) in sr.candidates().stats().cf_iter() {
                *counts.entry(term.to_string()).or_insert(0) += cf;
            }
        }
        let background = LanguageModel::from_counts(counts).map_err(runtime_err)?;
        (reviews, Some(embeddings), Some(background))
    } else {
        let corpus_dir = args.corpus.as_ref().expect("enforced by clap");
        let embeddings = match &args.embeddings {
            Some(path) => Some(Arc::new(
                EmbeddingTable::load_word2vec(path).map_err(usage_err)?,
            )),
            None => None,
        };
        let background = match &args.background {
            Some(path) => Some(load_background_counts(path).map_err(usage_err)?),
            None => None,
        };
        let reviews =
            corpus_io::load_corpus(corpus_dir, &pipeline.tokenizer).map_err(usage_err)?;
        (reviews, embeddings, background)
    };

    let inputs = EvaluationInputs {
        reviews: &reviews,
        embeddings,
        background: background.as_ref(),
    };
    validate_resources(&pipeline, &inputs)
        .map_err(|e| usage_err(anyhow!("resource validation failed: {e}")))?;

    let report = run_evaluation(&pipeline, &inputs).map_err(runtime_err)?;
    let written = write_report_bundle(&args.out, &report, &meta).map_err(runtime_err)?;
    write_json_pretty(&args.out.join("run_config.json"), &meta).map_err(runtime_err)?;

    println!(
        "evaluated {} of {} reviews ({} excluded); reports in {}",
        report.evaluated_sr_ids.len(),
        report.n_reviews_total,
        report.excluded.len(),
        args.out.display()
    );
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    println!("files:");
    for path in written {
        println!("  {}", path.display());
    }
    println!("  {}", args.out.join("run_config.json").display());
    Ok(())
}
