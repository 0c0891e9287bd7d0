//! Deterministic, hierarchically split random streams.
//!
//! Every experiment takes one root seed. Components never share a generator;
//! instead each asks the [`SeedTree`] for a stream by name (`"data"`,
//! `"mechanism"`, `"reduction-coins"`, ...), optionally indexed by a trial
//! number. Streams are independent ChaCha instances, so adding trials or
//! reordering components never reshuffles the draws of another stream.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator used throughout the crate. ChaCha output is identical
/// across platforms, which is what makes byte-identical reruns possible.
pub type Stream = ChaCha8Rng;

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

/// SplitMix64 finalizer; used to decorrelate derived seeds.
fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// FNV-1a over the label bytes, so stream names act as salts.
fn hash_label(label: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.as_bytes() {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// A node in the seed hierarchy. Cheap to copy; derivation is pure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeedTree {
    state: u64,
}

impl SeedTree {
    pub fn new(root_seed: u64) -> Self {
        SeedTree {
            state: splitmix(root_seed),
        }
    }

    /// Child node for a named component.
    pub fn child(&self, label: &str) -> SeedTree {
        SeedTree {
            state: splitmix(self.state ^ hash_label(label)),
        }
    }

    /// Child node for a trial index under this node.
    pub fn indexed(&self, index: u64) -> SeedTree {
        SeedTree {
            state: splitmix(self.state ^ splitmix(index)),
        }
    }

    /// A fresh generator for this node.
    pub fn stream(&self) -> Stream {
        let mut seed = [0u8; 32];
        let mut s = self.state;
        for chunk in seed.chunks_exact_mut(8) {
            s = splitmix(s);
            chunk.copy_from_slice(&s.to_le_bytes());
        }
        Stream::from_seed(seed)
    }

    /// Shorthand for `child(label).stream()`.
    pub fn stream_for(&self, label: &str) -> Stream {
        self.child(label).stream()
    }
}
