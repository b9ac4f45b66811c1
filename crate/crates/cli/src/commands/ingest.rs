//! `rankgauge ingest`: assemble the corpus from topic files, two qrels
//! files, and fetched abstracts.

use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context};
use clap::Args;

use rankgauge::corpus::TokenizerConfig;
use rankgauge::ingest::{
    fetch_documents, parse_qrels, parse_topic_file, DocCache, EutilsFetcher, FetchRecord,
    Fetcher, FetcherConfig, Label, TopicDescriptor,
};
use rankgauge::Error;

use crate::config::RunConfig;
use crate::corpus_io::{
    self, write_json_pretty, DocRecord, LabelFile, Manifest, ManifestEntry,
};
use crate::{runtime_err, usage_err, CmdResult};

#[derive(Args)]
pub struct IngestArgs {
    /// Topic files, or directories of topic files.
    #[arg(long, required = true, num_args = 1..)]
    pub topics: Vec<PathBuf>,
    /// Abstract-level qrels file.
    #[arg(long)]
    pub qrels_abstract: PathBuf,
    /// Full-document-level qrels file (final labels).
    #[arg(long)]
    pub qrels_content: PathBuf,
    /// Document cache directory.
    #[arg(long)]
    pub cache_dir: PathBuf,
    /// Output corpus directory.
    #[arg(long)]
    pub out: PathBuf,
    /// Resolve documents from a local JSONL file of
    /// {"id","title","abstract"} records instead of the network.
    #[arg(long)]
    pub local_records: Option<PathBuf>,
    /// Only use the cache; fail when an id would need fetching.
    #[arg(long)]
    pub offline: bool,
    /// E-utilities endpoint.
    #[arg(long, default_value = EutilsFetcher::DEFAULT_ENDPOINT)]
    pub endpoint: String,
    /// Ids per fetch request.
    #[arg(long, default_value_t = 200)]
    pub batch_size: usize,
    /// Maximum fetch requests per second.
    #[arg(long, default_value_t = 3.0)]
    pub rate_limit: f64,
}

/// Local JSONL-backed fetcher.
struct JsonlFetcher {
    records: BTreeMap<String, FetchRecord>,
}

impl JsonlFetcher {
    fn load(path: &PathBuf) -> anyhow::Result<Self> {
        let rows = corpus_io::read_docs_jsonl(path)?;
        let records = rows
            .into_iter()
            .map(|r| {
                (
                    r.id.clone(),
                    FetchRecord {
                        pmid: r.id,
                        title: r.title,
                        abstract_text: r.abstract_text,
                    },
                )
            })
            .collect();
        Ok(Self { records })
    }
}

impl Fetcher for JsonlFetcher {
    fn fetch_batch(&self, pmids: &[String]) -> Result<Vec<FetchRecord>, String> {
        Ok(pmids
            .iter()
            .filter_map(|id| self.records.get(id).cloned())
            .collect())
    }
}

/// Fetcher that refuses every request; cache-only mode.
struct OfflineFetcher;

impl Fetcher for OfflineFetcher {
    fn fetch_batch(&self, pmids: &[String]) -> Result<Vec<FetchRecord>, String> {
        Err(format!(
            "offline mode: {} ids are not in the cache (first: {})",
            pmids.len(),
            pmids.first().map(String::as_str).unwrap_or("?")
        ))
    }
}

fn collect_topic_files(inputs: &[PathBuf]) -> anyhow::Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for input in inputs {
        if input.is_dir() {
            let mut entries: Vec<PathBuf> = std::fs::read_dir(input)
                .with_context(|| format!("cannot read topics directory {}", input.display()))?
                .filter_map(|e| e.ok())
                .map(|e| e.path())
                .filter(|p| p.is_file())
                .collect();
            entries.sort();
            files.extend(entries);
        } else if input.is_file() {
            files.push(input.clone());
        } else {
            bail!("topic path {} does not exist", input.display());
        }
    }
    if files.is_empty() {
        bail!("no topic files found");
    }
    Ok(files)
}

pub fn run(args: IngestArgs) -> CmdResult {
    // Validate inputs up front: every failure here is a usage error.
    let topic_files = collect_topic_files(&args.topics).map_err(usage_err)?;
    let abstract_qrels = parse_qrels(&args.qrels_abstract)
        .map_err(|e| usage_err(anyhow!("{}: {e}", args.qrels_abstract.display())))?;
    let content_qrels = parse_qrels(&args.qrels_content)
        .map_err(|e| usage_err(anyhow!("{}: {e}", args.qrels_content.display())))?;

    let mut topics: Vec<TopicDescriptor> = Vec::with_capacity(topic_files.len());
    for file in &topic_files {
        topics.push(parse_topic_file(file).map_err(usage_err)?);
    }
    topics.sort_by(|a, b| a.sr_id.cmp(&b.sr_id));

    let fetcher: Box<dyn Fetcher> = if let Some(path) = &args.local_records {
        Box::new(JsonlFetcher::load(path).map_err(usage_err)?)
    } else if args.offline {
        Box::new(OfflineFetcher)
    } else {
        let api_key = std::env::var("NCBI_API_KEY").ok();
        Box::new(EutilsFetcher::new(args.endpoint.clone(), api_key))
    };
    let fetch_config = FetcherConfig {
        batch_size: args.batch_size,
        rate_limit_per_sec: args.rate_limit,
        ..Default::default()
    };
    let mut cache = DocCache::open(&args.cache_dir).map_err(runtime_err)?;

    std::fs::create_dir_all(args.out.join("docs")).map_err(runtime_err)?;
    std::fs::create_dir_all(args.out.join("labels")).map_err(runtime_err)?;

    let run_config = RunConfig {
        command: "ingest".to_string(),
        corpus_dir: Some(args.out.clone()),
        cache_dir: Some(args.cache_dir.clone()),
        embeddings_path: None,
        background_path: None,
        output_dir: Some(args.out.clone()),
        pipeline: rankgauge::pipeline::PipelineConfig {
            tokenizer: TokenizerConfig::default(),
            ..Default::default()
        },
        synthetic: None,
    };
    let meta = run_config.meta().map_err(runtime_err)?;

    let mut entries: Vec<ManifestEntry> = Vec::new();
    let mut partial_error: Option<Error> = None;
    for topic in &topics {
        let outcome = match fetch_documents(&topic.pmids, &mut cache, fetcher.as_ref(), &fetch_config)
        {
            Ok(outcome) => outcome,
            Err(e @ Error::FetchPartial { .. }) => {
                // Keep what we have; the manifest below is marked partial.
                partial_error = Some(e);
                break;
            }
            Err(e) => return Err(runtime_err(e)),
        };

        let records: Vec<DocRecord> = outcome
            .records
            .iter()
            .map(|r| DocRecord {
                id: r.pmid.clone(),
                title: r.title.clone(),
                abstract_text: r.abstract_text.clone(),
            })
            .collect();
        corpus_io::write_docs_jsonl(&corpus_io::docs_path(&args.out, &topic.sr_id), &records)
            .map_err(runtime_err)?;

        let label_of = |qrels: &BTreeMap<(String, String), Label>, id: &str| {
            qrels
                .get(&(topic.sr_id.clone(), id.to_string()))
                .map(|l| u8::from(l.is_relevant()))
        };
        let mut labels = LabelFile::default();
        let mut n_relevant = 0usize;
        for r in &records {
            if let Some(v) = label_of(&abstract_qrels, &r.id) {
                labels.abstract_level.insert(r.id.clone(), v);
            }
            if let Some(v) = label_of(&content_qrels, &r.id) {
                if v == 1 {
                    n_relevant += 1;
                }
                labels.fulldoc_level.insert(r.id.clone(), v);
            }
        }
        corpus_io::write_labels(&corpus_io::labels_path(&args.out, &topic.sr_id), &labels)
            .map_err(runtime_err)?;

        let mut missing = outcome.missing.clone();
        missing.sort();
        entries.push(ManifestEntry {
            sr_id: topic.sr_id.clone(),
            title: topic.title.clone(),
            n_listed: topic.pmids.len(),
            n_candidates: records.len(),
            n_relevant_fulldoc: n_relevant,
            n_missing: missing.len(),
            missing_docs: missing,
        });
    }

    let manifest = Manifest {
        run_config_hash: meta.config_hash.clone(),
        n_reviews: entries.len(),
        complete: partial_error.is_none(),
        reviews: entries,
    };
    corpus_io::write_manifest(&args.out, &manifest).map_err(runtime_err)?;
    write_json_pretty(&args.out.join("run_config.json"), &meta).map_err(runtime_err)?;

    println!(
        "ingested {} of {} reviews into {}",
        manifest.n_reviews,
        topics.len(),
        args.out.display()
    );
    for entry in &manifest.reviews {
        println!(
            "  {}: {} candidates, {} relevant (full-document), {} missing",
            entry.sr_id, entry.n_candidates, entry.n_relevant_fulldoc, entry.n_missing
        );
    }
    if let Some(e) = partial_error {
        return Err(runtime_err(anyhow!("ingest incomplete: {e}")));
    }
    Ok(())
}
