//! Assembling a systematic review from its candidate documents and its two
//! label sets.

use std::collections::{BTreeMap, BTreeSet};

use crate::corpus::{CandidateCollection, Document};
use crate::{Error, Result};

use super::qrels::Label;

/// One systematic review: the candidate collection plus abstract-level and
/// full-document-level labels. The full-document labels are the final ones
/// and drive the relevant set.
#[derive(Debug, Clone)]
pub struct SystematicReview {
    candidates: CandidateCollection,
    abstract_labels: BTreeMap<String, Label>,
    fulldoc_labels: BTreeMap<String, Label>,
    relevant_ids: BTreeSet<String>,
    missing_docs: Vec<String>,
}

/// Assembly output; `missing` mirrors [`SystematicReview::missing_docs`] for
/// manifest reporting.
#[derive(Debug)]
pub struct ReviewBuild {
    pub review: SystematicReview,
    pub missing: Vec<String>,
}

impl SystematicReview {
    /// Assemble from fetched documents and label maps.
    ///
    /// Labeled ids with no fetched text are excluded from the collection and
    /// recorded in `missing_docs`; candidates without a label default to
    /// non-relevant.
    pub fn assemble(
        sr_id: impl Into<String>,
        docs: Vec<Document>,
        listed_pmids: &[String],
        abstract_labels: BTreeMap<String, Label>,
        fulldoc_labels: BTreeMap<String, Label>,
    ) -> Result<ReviewBuild> {
        let sr_id = sr_id.into();
        let candidates = CandidateCollection::new(sr_id, docs)?;

        let mut missing: Vec<String> = Vec::new();
        for pmid in listed_pmids {
            if !candidates.contains(pmid) {
                missing.push(pmid.clone());
            }
        }
        for id in abstract_labels.keys().chain(fulldoc_labels.keys()) {
            if !candidates.contains(id) && !missing.contains(id) {
                missing.push(id.clone());
            }
        }
        missing.sort();
        missing.dedup();

        let abstract_labels: BTreeMap<String, Label> = abstract_labels
            .into_iter()
            .filter(|(id, _)| candidates.contains(id))
            .collect();
        let fulldoc_labels: BTreeMap<String, Label> = fulldoc_labels
            .into_iter()
            .filter(|(id, _)| candidates.contains(id))
            .collect();
        let relevant_ids: BTreeSet<String> = fulldoc_labels
            .iter()
            .filter(|(_, l)| l.is_relevant())
            .map(|(id, _)| id.clone())
            .collect();

        let review = SystematicReview {
            candidates,
            abstract_labels,
            fulldoc_labels,
            relevant_ids,
            missing_docs: missing.clone(),
        };
        Ok(ReviewBuild { review, missing })
    }

    pub fn sr_id(&self) -> &str {
        self.candidates.sr_id()
    }

    pub fn candidates(&self) -> &CandidateCollection {
        &self.candidates
    }

    /// Abstract-screening label for a document, when one exists.
    pub fn abstract_label(&self, id: &str) -> Option<Label> {
        self.abstract_labels.get(id).copied()
    }

    /// Full-document-screening label; non-relevant when unlabeled.
    pub fn fulldoc_label(&self, id: &str) -> Label {
        self.fulldoc_labels
            .get(id)
            .copied()
            .unwrap_or(Label::NonRelevant)
    }

    /// Ids relevant under full-document screening, ascending.
    pub fn relevant_ids(&self) -> &BTreeSet<String> {
        &self.relevant_ids
    }

    pub fn n_relevant(&self) -> usize {
        self.relevant_ids.len()
    }

    /// Listed or labeled ids whose text could not be fetched.
    pub fn missing_docs(&self) -> &[String] {
        &self.missing_docs
    }

    /// Whether the review can be evaluated with `min_relevant` seeds.
    pub fn has_min_relevant(&self, min_relevant: usize) -> bool {
        self.relevant_ids.len() >= min_relevant
    }

    /// Require at least `need` relevant documents.
    pub fn require_relevant(&self, need: usize) -> Result<()> {
        if self.relevant_ids.len() < need {
            return Err(Error::TooFewSeeds {
                sr_id: self.sr_id().to_string(),
                found: self.relevant_ids.len(),
                need,
            });
        }
        Ok(())
    }
}
