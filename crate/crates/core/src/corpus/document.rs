//! A candidate study and the term-overlap similarity between two studies.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::tokenize::{tokenize, TokenizerConfig};

/// One candidate document: title and abstract text plus the derived token
/// sequence and term-frequency map. Immutable after construction, so the
/// invariants (`len() == sum of tf`, no zero counts) hold by construction.
///
/// The frequency map is ordered so that every float accumulation over it is
/// reproducible across processes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    id: String,
    title: String,
    abstract_text: String,
    tokens: Vec<String>,
    tf: BTreeMap<String, u32>,
}

impl Document {
    /// Build from raw text; the document content is the title and abstract
    /// concatenated, tokenized under `config`.
    pub fn new(
        id: impl Into<String>,
        title: impl Into<String>,
        abstract_text: impl Into<String>,
        config: &TokenizerConfig,
    ) -> Self {
        let title = title.into();
        let abstract_text = abstract_text.into();
        let mut tokens = tokenize(&title, config);
        tokens.extend(tokenize(&abstract_text, config));
        Self::from_parts(id.into(), title, abstract_text, tokens)
    }

    /// Build directly from a token sequence (tests and the synthetic
    /// generator). Title and abstract are left empty.
    pub fn from_tokens(id: impl Into<String>, tokens: Vec<String>) -> Self {
        Self::from_parts(id.into(), String::new(), String::new(), tokens)
    }

    fn from_parts(id: String, title: String, abstract_text: String, tokens: Vec<String>) -> Self {
        let mut tf = BTreeMap::new();
        for t in &tokens {
            *tf.entry(t.clone()).or_insert(0u32) += 1;
        }
        Self {
            id,
            title,
            abstract_text,
            tokens,
            tf,
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn title(&self) -> &str {
        &self.title
    }

    pub fn abstract_text(&self) -> &str {
        &self.abstract_text
    }

    /// Ordered token sequence.
    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    /// Term frequency of `term`; zero when absent.
    pub fn tf(&self, term: &str) -> u32 {
        self.tf.get(term).copied().unwrap_or(0)
    }

    /// The full term-frequency map.
    pub fn tf_map(&self) -> &BTreeMap<String, u32> {
        &self.tf
    }

    /// Total token count.
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Number of distinct terms.
    pub fn vocab_size(&self) -> usize {
        self.tf.len()
    }
}

/// Term-overlap similarity: the sum, over each term present in both
/// documents, of its frequency in the first plus its frequency in the
/// second. Symmetric; zero iff the documents share no term.
pub fn overlap_sim(d1: &Document, d2: &Document) -> u64 {
    // Iterate the smaller vocabulary.
    let (small, large) = if d1.tf.len() <= d2.tf.len() {
        (d1, d2)
    } else {
        (d2, d1)
    };
    let mut sum = 0u64;
    for (term, &tf_small) in &small.tf {
        if let Some(&tf_large) = large.tf.get(term) {
            sum += u64::from(tf_small) + u64::from(tf_large);
        }
    }
    sum
}
