//! Ground-truth ranking quality, correlation-based estimator evaluation,
//! significance testing, model comparison, and the synthetic-review
//! generator used for property-based validation.

mod ap;
mod compare;
mod correlation;
mod evaluate;
mod significance;
mod synth;

pub use ap::{average_precision, sr_quality, QualityScore};
pub use compare::{compare_models, ModelComparisonReport, RankedSr};
pub use correlation::{pearson, spearman, Correlation};
pub use evaluate::{evaluate_estimator, CoefficientType, CorrelationResult};
pub use significance::{paired_t_test, significance_test, subsample_groups};
pub use synth::{synth_embeddings, synth_generate, SynthConfig};
