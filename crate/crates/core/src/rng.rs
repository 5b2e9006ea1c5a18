//! Seedable, splittable random streams.
//!
//! Every stochastic routine takes a [`SeedStream`] (or a raw seed) and derives
//! one child stream per unit of work, so results never depend on how work is
//! scheduled across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator behind every stream.
pub type StreamRng = ChaCha8Rng;

/// A node in a tree of independent random streams.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SeedStream {
    key: u64,
}

/// Well-known child labels, kept distinct so sibling streams never collide.
pub mod label {
    pub const STATES: u64 = 0x5354_4154;
    pub const NOISE: u64 = 0x4e4f_4953;
    pub const SHOTS: u64 = 0x5348_4f54;
    pub const GRID: u64 = 0x4752_4944;
}

impl SeedStream {
    pub fn new(seed: u64) -> Self {
        Self { key: splitmix64(seed) }
    }

    /// Child stream number `index`. Children of different parents, or with
    /// different indices, are statistically independent.
    pub fn split(&self, index: u64) -> Self {
        Self { key: splitmix64(self.key ^ splitmix64(index.wrapping_add(0x632b_e59b_d9b4_e019))) }
    }

    pub fn rng(&self) -> StreamRng {
        let mut seed = [0u8; 32];
        let mut k = self.key;
        for chunk in seed.chunks_exact_mut(8) {
            k = splitmix64(k);
            chunk.copy_from_slice(&k.to_le_bytes());
        }
        StreamRng::from_seed(seed)
    }
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
