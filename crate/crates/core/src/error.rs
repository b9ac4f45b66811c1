//! Crate-wide error type.

use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty document collection")]
    EmptyCollection,

    #[error("duplicate document id `{0}` in collection")]
    DuplicateDocId(String),

    #[error("language model has zero total tokens")]
    ZeroTotalTokens,

    #[error("qrels parse error at line {line}: {reason}")]
    QrelsParse { line: usize, reason: String },

    #[error("topic file `{file}`: missing {section} section")]
    TopicMissingSection { file: String, section: String },

    #[error("topic file `{file}`: {reason}")]
    TopicParse { file: String, reason: String },

    #[error("embedding stream error at byte offset {offset}: {reason}")]
    EmbeddingFormat { offset: u64, reason: String },

    #[error("fetch failed after retries: {reason}; {fetched} of {requested} ids resolved")]
    FetchPartial {
        reason: String,
        fetched: usize,
        requested: usize,
    },

    #[error("document cache corrupt at `{path}`: {reason}")]
    CacheCorrupt { path: String, reason: String },

    #[error("seed documents share no term with any candidate (zero broadness denominator)")]
    DegenerateCollection,

    #[error("systematic review `{sr_id}` has {found} relevant documents, need at least {need}")]
    TooFewSeeds {
        sr_id: String,
        found: usize,
        need: usize,
    },

    #[error("query has no term present in the collection")]
    QueryFullyOov,

    #[error("seed document embeds to the zero vector (no term has an embedding)")]
    UnusableSeed,

    #[error("too few embeddable documents for clustering: {0} (need at least 3)")]
    TooFewEmbeddable(usize),

    #[error("need at least {need} documents, found {found}")]
    TooFewDocuments { need: usize, found: usize },

    #[error("no relevant document appears in the ranking")]
    NoRelevantRanked,

    #[error("correlation needs at least {need} points, got {got}")]
    TooFewPoints { need: usize, got: usize },

    #[error("correlation undefined: input list is constant")]
    ConstantInput,

    #[error("input lists have different lengths: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("estimates and qualities cover different reviews; missing: {0:?}")]
    CoverageMismatch(Vec<String>),

    #[error("subsample group counts differ: {0} vs {1}")]
    GroupCountMismatch(usize, usize),

    #[error("degenerate synthetic configuration: {0}")]
    BadSynthConfig(String),

    #[error("unknown estimator `{0}`")]
    UnknownEstimator(String),

    #[error("unknown systematic review `{0}`")]
    UnknownReview(String),

    #[error("unknown document `{doc_id}` in review `{sr_id}`")]
    UnknownDocument { sr_id: String, doc_id: String },

    #[error("missing resource: {0}")]
    MissingResource(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}
