//! Document representation, tokenization, collection statistics, language
//! models, and the term-overlap similarity the broadness estimate is built
//! on.

mod collection;
mod document;
mod lm;
mod tokenize;

pub use collection::{CandidateCollection, CollectionStats};
pub use document::{overlap_sim, Document};
pub use lm::LanguageModel;
pub use tokenize::{builtin_stoplist, tokenize, TokenizerConfig};
