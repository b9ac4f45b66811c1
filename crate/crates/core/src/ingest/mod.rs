//! Loading the evaluation data: topic descriptors, relevance judgments,
//! fetched abstracts (with a resumable local cache), pretrained word
//! embeddings, and the background-corpus language model.

mod embeddings;
mod fetch;
mod qrels;
mod review;
mod topics;

pub use embeddings::EmbeddingTable;
pub use fetch::{
    fetch_documents, DocCache, EutilsFetcher, FetchOutcome, FetchRecord, Fetcher, FetcherConfig,
};
pub use qrels::{parse_qrels, parse_qrels_str, Label, QrelKey};
pub use review::{ReviewBuild, SystematicReview};
pub use topics::{parse_topic_file, parse_topic_str, TopicDescriptor};

use std::io::BufRead;
use std::path::Path;

use crate::corpus::LanguageModel;
use crate::{Error, Result};

/// Load a background language model from a `term<TAB>count` file.
pub fn load_background_counts(path: &Path) -> Result<LanguageModel> {
    let file = std::fs::File::open(path)?;
    let reader = std::io::BufReader::new(file);
    let mut counts = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim_end();
        if line.is_empty() {
            continue;
        }
        let (term, count) = line.split_once('\t').ok_or_else(|| Error::InvalidConfig(format!(
            "background counts {}:{}: expected term<TAB>count",
            path.display(),
            idx + 1
        )))?;
        let count: u64 = count.trim().parse().map_err(|_| {
            Error::InvalidConfig(format!(
                "background counts {}:{}: bad count `{count}`",
                path.display(),
                idx + 1
            ))
        })?;
        counts.push((term.to_string(), count));
    }
    LanguageModel::from_counts(counts)
}
