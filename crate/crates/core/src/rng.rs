//! Seeding conventions.
//!
//! Every stochastic operation takes an explicit `u64` seed and uses a
//! ChaCha12 generator. Independent substreams (bootstrap replicates, blocks,
//! storm strips, grid cells) are derived deterministically with
//! [`derive_seed`], so batches can run in parallel and still reproduce
//! bit-identically.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derive the seed of substream `stream` from a master seed.
pub fn derive_seed(master: u64, stream: u64) -> u64 {
    splitmix64(master ^ splitmix64(stream))
}

/// Construct the named generator for a seed.
pub fn seeded_rng(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}
