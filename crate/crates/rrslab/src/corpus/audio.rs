//! Deterministic pseudo-audio features.
//!
//! Each query token becomes one length-F frame: a keyed pseudo-random base
//! pattern for the token plus small jitter keyed by the whole sequence, so
//! the same token sounds slightly different across samples while
//! regeneration from (tokens, seed) stays bit-identical.

use serde::{Deserialize, Serialize};

use crate::rng::{keyed_unit_vec, mix_keys};
use crate::{Error, Result};

/// Default frame width F.
pub const AUDIO_DIM: usize = 16;

const BASE_TAG: u64 = 0x41_55_44_42; // "AUDB"
const JITTER_TAG: u64 = 0x41_55_44_4a; // "AUDJ"

/// Jitter amplitude around the token's base pattern.
const JITTER: f64 = 0.05;

/// Per-sample audio payload: one frame per query token.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticAudio {
    pub frames: Vec<Vec<f64>>,
}

impl SyntheticAudio {
    pub fn frame_width(&self) -> usize {
        self.frames.first().map_or(0, Vec::len)
    }
}

/// Synthesize frames for a token sequence. Values stay in [-1, 1].
pub fn synth_audio(tokens: &[u32], seed: u64, frame_dim: usize) -> Result<SyntheticAudio> {
    if tokens.is_empty() {
        return Err(Error::Corpus("cannot synthesize audio for empty token sequence".into()));
    }
    let seq_digest = mix_keys(
        &tokens
            .iter()
            .map(|&t| t as u64)
            .chain(std::iter::once(tokens.len() as u64))
            .collect::<Vec<_>>(),
    );
    let frames = tokens
        .iter()
        .enumerate()
        .map(|(i, &tok)| {
            let base = keyed_unit_vec(&[BASE_TAG, seed, tok as u64], frame_dim);
            let jitter = keyed_unit_vec(&[JITTER_TAG, seed, seq_digest, i as u64], frame_dim);
            base.iter()
                .zip(&jitter)
                .map(|(b, j)| (b + JITTER * j).clamp(-1.0, 1.0))
                .collect()
        })
        .collect();
    Ok(SyntheticAudio { frames })
}
