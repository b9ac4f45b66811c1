//! Candidate collections and their derived statistics.

use std::collections::{BTreeMap, HashMap};

use crate::{Error, Result};

use super::document::Document;

/// Document frequencies, collection frequencies, and token totals over one
/// candidate collection. Recomputable from the documents, bit-identical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollectionStats {
    n_docs: usize,
    total_tokens: u64,
    df: HashMap<String, u32>,
    cf: HashMap<String, u64>,
}

impl CollectionStats {
    /// Count statistics over `docs`. Errors on an empty iterator.
    pub fn build<'a>(docs: impl IntoIterator<Item = &'a Document>) -> Result<Self> {
        let mut n_docs = 0usize;
        let mut total_tokens = 0u64;
        let mut df: HashMap<String, u32> = HashMap::new();
        let mut cf: HashMap<String, u64> = HashMap::new();
        for doc in docs {
            n_docs += 1;
            total_tokens += doc.len() as u64;
            for (term, &count) in doc.tf_map() {
                *df.entry(term.clone()).or_insert(0) += 1;
                *cf.entry(term.clone()).or_insert(0) += u64::from(count);
            }
        }
        if n_docs == 0 {
            return Err(Error::EmptyCollection);
        }
        Ok(Self {
            n_docs,
            total_tokens,
            df,
            cf,
        })
    }

    pub fn n_docs(&self) -> usize {
        self.n_docs
    }

    pub fn total_tokens(&self) -> u64 {
        self.total_tokens
    }

    /// Document frequency of `term`; zero when absent.
    pub fn df(&self, term: &str) -> u32 {
        self.df.get(term).copied().unwrap_or(0)
    }

    /// Collection frequency of `term`; zero when absent.
    pub fn cf(&self, term: &str) -> u64 {
        self.cf.get(term).copied().unwrap_or(0)
    }

    pub fn vocab_size(&self) -> usize {
        self.cf.len()
    }

    /// Iterate (term, cf) pairs in arbitrary order.
    pub fn cf_iter(&self) -> impl Iterator<Item = (&str, u64)> {
        self.cf.iter().map(|(t, &c)| (t.as_str(), c))
    }

    /// Mean document length in tokens.
    pub fn avg_doc_len(&self) -> f64 {
        self.total_tokens as f64 / self.n_docs as f64
    }
}

/// The candidate documents of one systematic review, keyed by id, with
/// statistics computed once at construction.
#[derive(Debug, Clone)]
pub struct CandidateCollection {
    sr_id: String,
    docs: BTreeMap<String, Document>,
    stats: CollectionStats,
}

impl CandidateCollection {
    /// Build from documents; rejects duplicates and empty input.
    pub fn new(sr_id: impl Into<String>, docs: Vec<Document>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for doc in docs {
            let id = doc.id().to_string();
            if map.insert(id.clone(), doc).is_some() {
                return Err(Error::DuplicateDocId(id));
            }
        }
        let stats = CollectionStats::build(map.values())?;
        Ok(Self {
            sr_id: sr_id.into(),
            docs: map,
            stats,
        })
    }

    pub fn sr_id(&self) -> &str {
        &self.sr_id
    }

    pub fn len(&self) -> usize {
        self.docs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.docs.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&Document> {
        self.docs.get(id)
    }

    pub fn contains(&self, id: &str) -> bool {
        self.docs.contains_key(id)
    }

    /// Documents in ascending id order.
    pub fn docs(&self) -> impl Iterator<Item = &Document> {
        self.docs.values()
    }

    /// Ids in ascending order.
    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.docs.keys().map(String::as_str)
    }

    pub fn stats(&self) -> &CollectionStats {
        &self.stats
    }
}
