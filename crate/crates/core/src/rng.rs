//! Deterministic random streams.
//!
//! Scan `i` of an ensemble seeded with `seed` draws from a ChaCha8 generator
//! keyed by [`substream_seed`]`(seed, i)`, so every scan can be regenerated
//! on its own and ensembles do not depend on evaluation order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type ScanRng = ChaCha8Rng;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output function.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// 64-bit key of substream `index` under `seed`:
/// `mix64(mix64(seed) + (index + 1) * 0x9E3779B97F4A7C15)` (wrapping).
pub fn substream_seed(seed: u64, index: u64) -> u64 {
    mix64(mix64(seed).wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}

/// Generator for substream `index`. The 64-bit key is expanded into the
/// 256-bit ChaCha key by `SeedableRng::seed_from_u64`.
pub fn substream(seed: u64, index: u64) -> ScanRng {
    ChaCha8Rng::seed_from_u64(substream_seed(seed, index))
}
