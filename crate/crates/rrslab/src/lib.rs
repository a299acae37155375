//! Desk-scale laboratory for safety-alignment by representation reshaping.
//!
//! A deliberately misaligned toy multimodal (audio + text) language model is
//! repaired by relocating harmful-query representations into a refusal zone
//! via masked safety-vector targets, then measured with an ASR/ORR/NSI
//! red-team protocol against four supervised fine-tuning baselines.
//!
//! Modules:
//! - [`corpus`] — synthetic Basic / Mirror / Parallel / RedTeam datasets,
//!   prompt pool, deterministic pseudo-audio features, modality rendering.
//! - [`model`] — tiny decoder transformer with a frozen-able linear audio
//!   encoder, manual backprop, low-rank adapters, Adam, pretraining.
//! - [`safety`] — refusal-logit deltas, mean change vector, top-m% feature
//!   selection, frozen fine-tuning targets.
//! - [`finetune`] — representation-matching fine-tuning plus the four SFT
//!   baselines, all adapter-only with frozen modality encoder.
//! - [`eval`] — red-team ASR/ORR/NSI metrics, cluster statistics, the
//!   feature-selection sweep.
//! - [`viz`] — PCA and exact t-SNE 2D embeddings with SVG/CSV emission.
//! - [`tensor`] / [`pipeline`] — binary tensor files, run manifests, and the
//!   one-command reproduction pipeline behind the CLI.

pub mod corpus;
pub mod eval;
pub mod finetune;
pub mod model;
pub mod pipeline;
pub mod rng;
pub mod safety;
pub mod tensor;
pub mod viz;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("corpus: {0}")]
    Corpus(String),

    #[error("model: {0}")]
    Model(String),

    #[error("safety: {0}")]
    Safety(String),

    #[error("finetune: {0}")]
    Finetune(String),

    #[error("eval: {0}")]
    Eval(String),

    #[error("viz: {0}")]
    Viz(String),

    #[error("tensor format: {0}")]
    TensorFormat(String),

    #[error("pipeline: {0}")]
    Pipeline(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
