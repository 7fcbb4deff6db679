//! The single deterministic generator used for every sampled artifact.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Name and version of the generator; written next to sampled artifacts so a
/// file can be replayed bit for bit.
pub const GENERATOR: &str = "chacha8-v1";

pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seed for the `index`-th independent sub-run of a run seeded with `seed`.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    seed.wrapping_add(index)
}
