//! Estimate how well seed-driven screening prioritization will rank the
//! candidate documents of a systematic review, before any manual screening
//! happens.
//!
//! The crate has three layers:
//!
//! * document plumbing — [`corpus`] (tokenization, collection statistics,
//!   term-overlap similarity) and [`ingest`] (topic/qrels parsing, abstract
//!   fetching with a local cache, word-embedding and background language-model
//!   loading);
//! * ranking and estimation — [`rankers`] (BM25, average-embedding similarity,
//!   query-likelihood with a pluggable term-weight hook) and [`estimators`]
//!   (the topic-broadness measure, its ablations, and seventeen baseline
//!   estimators);
//! * evaluation — [`eval`] (average precision, rank/linear correlation,
//!   subsample significance testing, cross-model comparison, and a synthetic
//!   review generator), tied together by [`pipeline`] and serialized by
//!   [`report`].
//!
//! Numeric kernels under [`math`] are generic over the scalar type via
//! [`num::Real`]; the pipeline itself runs on the concrete aliases below.

pub mod corpus;
pub mod error;
pub mod estimators;
pub mod eval;
pub mod ingest;
pub mod math;
pub mod num;
pub mod pipeline;
pub mod rankers;
pub mod report;
pub mod rng;

pub use error::Error;

/// Scalar type used by the pipeline for scores, estimates, and coefficients.
pub type Score = f64;

/// Probabilities in language models.
pub type Prob = f64;

/// Result alias for crate operations.
pub type Result<T> = std::result::Result<T, Error>;
