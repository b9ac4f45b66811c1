//! `rankgauge rank`: one seed, one review, one TREC run file.

use std::path::PathBuf;
use std::sync::Arc;

use anyhow::anyhow;
use clap::Args;

use rankgauge::ingest::EmbeddingTable;
use rankgauge::rankers::{AesRanker, Bm25Params, Bm25Ranker, QlRanker, SeedRanker};
use rankgauge::report::atomic_write;

use crate::corpus_io::{self, load_review};
use crate::{runtime_err, usage_err, CmdResult, CorpusArgs};

#[derive(Args)]
pub struct RankArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    /// Review to rank.
    #[arg(long)]
    pub sr: String,
    /// Seed document id (used as the query; excluded from the ranking).
    #[arg(long)]
    pub seed: String,
    /// Ranking model.
    #[arg(long, value_parser = ["bm25", "sdr-lite", "aes"], default_value = "bm25")]
    pub ranker: String,
    /// Word2vec binary embeddings (required for `aes`).
    #[arg(long)]
    pub embeddings: Option<PathBuf>,
    /// BM25 k1.
    #[arg(long, default_value_t = 1.2)]
    pub k1: f64,
    /// BM25 b.
    #[arg(long, default_value_t = 0.75)]
    pub b: f64,
    /// Dirichlet smoothing for `sdr-lite`.
    #[arg(long, default_value_t = 1000.0)]
    pub mu: f64,
    /// Output run file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(args: RankArgs) -> CmdResult {
    let tokenizer =
        corpus_io::load_tokenizer(args.corpus.tokenizer_config.as_deref()).map_err(usage_err)?;
    let manifest = corpus_io::read_manifest(&args.corpus.corpus).map_err(usage_err)?;
    let entry = manifest
        .reviews
        .iter()
        .find(|e| e.sr_id == args.sr)
        .ok_or_else(|| usage_err(anyhow!("unknown systematic review `{}`", args.sr)))?;
    let review = load_review(&args.corpus.corpus, entry, &tokenizer).map_err(runtime_err)?;
    let seed = review
        .candidates()
        .get(&args.seed)
        .ok_or_else(|| usage_err(anyhow!("unknown document `{}` in `{}`", args.seed, args.sr)))?
        .clone();

    let ranker: Box<dyn SeedRanker> = match args.ranker.as_str() {
        "bm25" => Box::new(Bm25Ranker {
            params: Bm25Params {
                k1: args.k1,
                b: args.b,
            },
        }),
        "sdr-lite" => Box::new(QlRanker::sdr_lite(args.mu)),
        "aes" => {
            let path = args
                .embeddings
                .as_ref()
                .ok_or_else(|| usage_err(anyhow!("--embeddings is required for aes")))?;
            let table = EmbeddingTable::load_word2vec(path).map_err(usage_err)?;
            Box::new(AesRanker::new(Arc::new(table)))
        }
        other => return Err(usage_err(anyhow!("unknown ranker `{other}`"))),
    };

    let ranking = ranker.rank(&seed, review.candidates()).map_err(runtime_err)?;
    let mut buf = Vec::new();
    ranking
        .write_trec_run(&mut buf, ranker.name())
        .map_err(runtime_err)?;
    match &args.out {
        Some(path) => atomic_write(path, &buf).map_err(runtime_err)?,
        None => print!("{}", String::from_utf8_lossy(&buf)),
    }
    Ok(())
}
