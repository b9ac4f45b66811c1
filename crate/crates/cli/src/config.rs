//! The resolved configuration of one run, echoed into every output file.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use rankgauge::eval::SynthConfig;
use rankgauge::pipeline::PipelineConfig;
use rankgauge::report::RunMeta;

/// Everything that determines a run's outputs. Two runs with an equal
/// `RunConfig` produce byte-identical reports.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub corpus_dir: Option<PathBuf>,
    pub cache_dir: Option<PathBuf>,
    pub embeddings_path: Option<PathBuf>,
    pub background_path: Option<PathBuf>,
    pub output_dir: Option<PathBuf>,
    pub pipeline: PipelineConfig,
    pub synthetic: Option<SynthConfig>,
}

impl RunConfig {
    /// Hash this config into the run identity embedded in outputs.
    pub fn meta(&self) -> anyhow::Result<RunMeta> {
        Ok(RunMeta::for_config(
            self,
            self.pipeline.tokenizer.to_kv_string(),
        )?)
    }
}
