//! Seed derivation and keyed pseudo-randomness.
//!
//! Every random draw in the crate bottoms out in a single global seed,
//! fanned out through named sub-seeds so any stage can be rerun in
//! isolation with identical results on any platform.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

/// Derive a labeled sub-seed from a parent seed.
///
/// The label names the stage and purpose, e.g. `"corpus.mirror"` or
/// `"finetune.rrs.batch"`.
pub fn derive_seed(parent: u64, label: &str) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update(parent.to_le_bytes());
    hasher.update(label.as_bytes());
    let digest = hasher.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("sha256 yields 32 bytes"))
}

/// Seeded RNG for a named purpose.
pub fn seeded(parent: u64, label: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(parent, label))
}

/// splitmix64 finalizer; mixes a key chain into well-distributed bits.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Fold a tuple of keys into one 64-bit state.
pub fn mix_keys(keys: &[u64]) -> u64 {
    let mut state = 0x243f_6a88_85a3_08d3; // arbitrary non-zero start
    for &k in keys {
        state = mix64(state ^ k);
    }
    state
}

/// Deterministic vector with entries uniform in [-1, 1], keyed by `keys`.
pub fn keyed_unit_vec(keys: &[u64], len: usize) -> Vec<f64> {
    let mut state = mix_keys(keys);
    (0..len)
        .map(|_| {
            state = mix64(state);
            // map the top 53 bits to [0, 1), then to [-1, 1]
            let unit = (state >> 11) as f64 / (1u64 << 53) as f64;
            2.0 * unit - 1.0
        })
        .collect()
}
