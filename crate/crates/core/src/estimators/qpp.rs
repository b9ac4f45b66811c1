//! Pre-retrieval query-performance predictors, computed with the seed
//! document as the query and the candidate collection as the corpus.
//!
//! Conventions, fixed for reproducibility: the IDF family uses the natural
//! log; the entropy-style measures (SCS, avgICTF) use log base 2. Unique
//! query terms are restricted to those the collection has seen.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::{CandidateCollection, Document};
use crate::math::stats;
use crate::{Error, Result, Score};

/// The ten pre-retrieval predictors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QppMeasure {
    QLen,
    AvgIdf,
    SumIdf,
    MaxIdf,
    StdevIdf,
    Scs,
    AvgIctf,
    Scq,
    NScq,
    MaxScq,
}

impl QppMeasure {
    pub const ALL: [QppMeasure; 10] = [
        QppMeasure::QLen,
        QppMeasure::AvgIdf,
        QppMeasure::SumIdf,
        QppMeasure::MaxIdf,
        QppMeasure::StdevIdf,
        QppMeasure::Scs,
        QppMeasure::AvgIctf,
        QppMeasure::Scq,
        QppMeasure::NScq,
        QppMeasure::MaxScq,
    ];

    pub fn name(self) -> &'static str {
        match self {
            QppMeasure::QLen => "QLen",
            QppMeasure::AvgIdf => "avgIDF",
            QppMeasure::SumIdf => "sumIDF",
            QppMeasure::MaxIdf => "maxIDF",
            QppMeasure::StdevIdf => "stdevIDF",
            QppMeasure::Scs => "SCS",
            QppMeasure::AvgIctf => "avgICTF",
            QppMeasure::Scq => "SCQ",
            QppMeasure::NScq => "nSCQ",
            QppMeasure::MaxScq => "maxSCQ",
        }
    }
}

impl fmt::Display for QppMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for QppMeasure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownEstimator(s.to_string()))
    }
}

/// Evaluate one predictor for `query` against `coll`. Errors when the query
/// is empty or none of its terms occurs in the collection.
pub fn qpp_measure(
    measure: QppMeasure,
    query: &Document,
    coll: &CandidateCollection,
) -> Result<Score> {
    if query.is_empty() {
        return Err(Error::QueryFullyOov);
    }
    let s = coll.stats();
    // Unique query terms present in the collection, in sorted order.
    let terms: Vec<&str> = query
        .tf_map()
        .keys()
        .map(String::as_str)
        .filter(|t| s.df(t) > 0)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if terms.is_empty() {
        return Err(Error::QueryFullyOov);
    }

    let n_docs = s.n_docs() as Score;
    let total = s.total_tokens() as Score;
    let idf = |t: &str| (n_docs / Score::from(s.df(t))).ln();
    let scq = |t: &str| (1.0 + (s.cf(t) as Score).ln()) * (1.0 + n_docs / Score::from(s.df(t))).ln();

    let value = match measure {
        QppMeasure::QLen => query.len() as Score,
        QppMeasure::AvgIdf => stats::mean(&terms.iter().map(|t| idf(t)).collect::<Vec<_>>()),
        QppMeasure::SumIdf => terms.iter().map(|t| idf(t)).sum(),
        QppMeasure::MaxIdf => stats::max(&terms.iter().map(|t| idf(t)).collect::<Vec<_>>()),
        QppMeasure::StdevIdf => {
            stats::population_stdev(&terms.iter().map(|t| idf(t)).collect::<Vec<_>>())
        }
        QppMeasure::Scs => {
            let q_len = query.len() as Score;
            terms
                .iter()
                .map(|t| {
                    let p_q = Score::from(query.tf(t)) / q_len;
                    let p_c = s.cf(t) as Score / total;
                    p_q * (p_q / p_c).log2()
                })
                .sum()
        }
        QppMeasure::AvgIctf => {
            let sum: Score = terms.iter().map(|t| (total / s.cf(t) as Score).log2()).sum();
            sum / terms.len() as Score
        }
        QppMeasure::Scq => terms.iter().map(|t| scq(t)).sum(),
        QppMeasure::NScq => {
            terms.iter().map(|t| scq(t)).sum::<Score>() / terms.len() as Score
        }
        QppMeasure::MaxScq => stats::max(&terms.iter().map(|t| scq(t)).collect::<Vec<_>>()),
    };
    Ok(value)
}
