//! On-disk layout of an ingested corpus.
//!
//! ```text
//! corpus_dir/
//!   manifest.json          review inventory with candidate and missing counts
//!   docs/{sr_id}.jsonl     one {"id","title","abstract"} record per line
//!   labels/{sr_id}.json    abstract- and full-document-level labels
//! ```

use std::collections::BTreeMap;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use rankgauge::corpus::{Document, TokenizerConfig};
use rankgauge::ingest::{Label, SystematicReview};
use rankgauge::report::atomic_write;

/// One line of a docs JSONL file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DocRecord {
    pub id: String,
    pub title: String,
    #[serde(rename = "abstract")]
    pub abstract_text: String,
}

/// Label file payload: `0` non-relevant, `1` relevant.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct LabelFile {
    pub abstract_level: BTreeMap<String, u8>,
    pub fulldoc_level: BTreeMap<String, u8>,
}

/// Per-review manifest entry.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub sr_id: String,
    pub title: String,
    pub n_listed: usize,
    pub n_candidates: usize,
    pub n_relevant_fulldoc: usize,
    pub n_missing: usize,
    pub missing_docs: Vec<String>,
}

/// Corpus inventory written by ingest.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    pub run_config_hash: String,
    pub n_reviews: usize,
    pub complete: bool,
    pub reviews: Vec<ManifestEntry>,
}

pub fn docs_path(corpus: &Path, sr_id: &str) -> PathBuf {
    corpus.join("docs").join(format!("{sr_id}.jsonl"))
}

pub fn labels_path(corpus: &Path, sr_id: &str) -> PathBuf {
    corpus.join("labels").join(format!("{sr_id}.json"))
}

pub fn manifest_path(corpus: &Path) -> PathBuf {
    corpus.join("manifest.json")
}

/// Serialize documents as JSON lines.
pub fn write_docs_jsonl(path: &Path, records: &[DocRecord]) -> Result<()> {
    let mut buf = Vec::new();
    for r in records {
        serde_json::to_writer(&mut buf, r)?;
        buf.push(b'\n');
    }
    atomic_write(path, &buf)?;
    Ok(())
}

pub fn read_docs_jsonl(path: &Path) -> Result<Vec<DocRecord>> {
    let file = std::fs::File::open(path)
        .with_context(|| format!("cannot open documents file {}", path.display()))?;
    let mut records = Vec::new();
    for (idx, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: DocRecord = serde_json::from_str(&line)
            .with_context(|| format!("{}:{}: bad document record", path.display(), idx + 1))?;
        records.push(record);
    }
    Ok(records)
}

pub fn write_labels(path: &Path, labels: &LabelFile) -> Result<()> {
    let mut bytes = serde_json::to_vec_pretty(labels)?;
    bytes.push(b'\n');
    atomic_write(path, &bytes)?;
    Ok(())
}

pub fn read_labels(path: &Path) -> Result<LabelFile> {
    let bytes = std::fs::read(path)
        .with_context(|| format!("cannot open labels file {}", path.display()))?;
    Ok(serde_json::from_slice(&bytes)?)
}

pub fn write_manifest(corpus: &Path, manifest: &Manifest) -> Result<()> {
    let mut bytes = serde_json::to_vec_pretty(manifest)?;
    bytes.push(b'\n');
    atomic_write(&manifest_path(corpus), &bytes)?;
    Ok(())
}

pub fn read_manifest(corpus: &Path) -> Result<Manifest> {
    let path = manifest_path(corpus);
    let bytes = std::fs::read(&path).with_context(|| {
        format!(
            "cannot open corpus manifest {} (did you run `rankgauge ingest`?)",
            path.display()
        )
    })?;
    Ok(serde_json::from_slice(&bytes)?)
}

fn label_map(raw: &BTreeMap<String, u8>) -> Result<BTreeMap<String, Label>> {
    let mut out = BTreeMap::new();
    for (id, v) in raw {
        let label = match v {
            0 => Label::NonRelevant,
            1 => Label::Relevant,
            other => bail!("non-binary label {other} for document {id}"),
        };
        out.insert(id.clone(), label);
    }
    Ok(out)
}

/// Load one review from the corpus directory, tokenizing under `tokenizer`.
pub fn load_review(
    corpus: &Path,
    entry: &ManifestEntry,
    tokenizer: &TokenizerConfig,
) -> Result<SystematicReview> {
    let records = read_docs_jsonl(&docs_path(corpus, &entry.sr_id))?;
    let labels = read_labels(&labels_path(corpus, &entry.sr_id))?;
    let docs: Vec<Document> = records
        .into_iter()
        .map(|r| Document::new(r.id, r.title, r.abstract_text, tokenizer))
        .collect();
    let listed: Vec<String> = docs.iter().map(|d| d.id().to_string()).collect();
    let build = SystematicReview::assemble(
        &entry.sr_id,
        docs,
        &listed,
        label_map(&labels.abstract_level)?,
        label_map(&labels.fulldoc_level)?,
    )?;
    Ok(build.review)
}

/// Load every review listed in the manifest.
pub fn load_corpus(
    corpus: &Path,
    tokenizer: &TokenizerConfig,
) -> Result<Vec<SystematicReview>> {
    let manifest = read_manifest(corpus)?;
    let mut reviews = Vec::with_capacity(manifest.reviews.len());
    for entry in &manifest.reviews {
        reviews.push(load_review(corpus, entry, tokenizer)?);
    }
    Ok(reviews)
}

/// Write a synthetic (or otherwise in-memory) review set into the corpus
/// layout so every downstream command can read it.
pub fn write_reviews_as_corpus(
    corpus: &Path,
    reviews: &[SystematicReview],
    config_hash: &str,
) -> Result<()> {
    std::fs::create_dir_all(corpus.join("docs"))?;
    std::fs::create_dir_all(corpus.join("labels"))?;
    let mut entries = Vec::with_capacity(reviews.len());
    for sr in reviews {
        let records: Vec<DocRecord> = sr
            .candidates()
            .docs()
            .map(|d| DocRecord {
                id: d.id().to_string(),
                title: d.title().to_string(),
                abstract_text: d.abstract_text().to_string(),
            })
            .collect();
        write_docs_jsonl(&docs_path(corpus, sr.sr_id()), &records)?;

        let mut labels = LabelFile::default();
        for doc in sr.candidates().docs() {
            let full = u8::from(sr.fulldoc_label(doc.id()).is_relevant());
            labels.fulldoc_level.insert(doc.id().to_string(), full);
            let abs = sr
                .abstract_label(doc.id())
                .map(|l| u8::from(l.is_relevant()))
                .unwrap_or(full);
            labels.abstract_level.insert(doc.id().to_string(), abs);
        }
        write_labels(&labels_path(corpus, sr.sr_id()), &labels)?;

        entries.push(ManifestEntry {
            sr_id: sr.sr_id().to_string(),
            title: String::new(),
            n_listed: sr.candidates().len(),
            n_candidates: sr.candidates().len(),
            n_relevant_fulldoc: sr.n_relevant(),
            n_missing: sr.missing_docs().len(),
            missing_docs: sr.missing_docs().to_vec(),
        });
    }
    write_manifest(
        corpus,
        &Manifest {
            run_config_hash: config_hash.to_string(),
            n_reviews: entries.len(),
            complete: true,
            reviews: entries,
        },
    )?;
    Ok(())
}

/// Load the tokenizer config from a `key=value` file, or the default.
pub fn load_tokenizer(path: Option<&Path>) -> Result<TokenizerConfig> {
    match path {
        None => Ok(TokenizerConfig::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .with_context(|| format!("cannot open tokenizer config {}", p.display()))?;
            Ok(TokenizerConfig::from_kv_str(&text)?)
        }
    }
}

/// Write a complete JSON value atomically with a trailing newline.
pub fn write_json_pretty<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    atomic_write(path, &bytes)?;
    Ok(())
}
