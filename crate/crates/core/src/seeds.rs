//! Counter-based seed expansion.
//!
//! Every random draw in the crate is addressed by `(root, stream, index)` so a
//! single trial can be replayed without regenerating the ones before it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives the seed for trial `index` of `stream` under `root`.
pub fn derive(root: u64, stream: u64, index: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(root) ^ stream) ^ index)
}

pub fn rng_from(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Named streams keep unrelated suites from sharing random draws.
pub mod stream {
    pub const PURE_SPINOR: u64 = 0x7075_7265;
    pub const GENERIC_SPINOR: u64 = 0x6765_6e65;
    pub const AUDIT: u64 = 0x6175_6469;
    pub const MOMENTUM: u64 = 0x6d6f_6d65;
    pub const SPHERE: u64 = 0x7370_6865;
    pub const MONTE_CARLO: u64 = 0x6d63_6d63;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeedSplitter {
    root: u64,
}

impl SeedSplitter {
    pub fn new(root: u64) -> Self {
        Self { root }
    }

    pub fn root(&self) -> u64 {
        self.root
    }

    pub fn seed(&self, stream: u64, index: u64) -> u64 {
        derive(self.root, stream, index)
    }

    pub fn rng(&self, stream: u64, index: u64) -> ChaCha8Rng {
        rng_from(self.seed(stream, index))
    }
}
