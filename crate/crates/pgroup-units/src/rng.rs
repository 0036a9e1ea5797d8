//! Deterministic randomness for verification runs. Every sampling task
//! derives its own stream from the run seed and a label, so reports are
//! reproducible and independent of check ordering.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Mixes a label into a run seed (FNV-1a over the label bytes).
pub fn sub_seed(seed: u64, label: &str) -> u64 {
    let mut h = 0xcbf29ce484222325u64 ^ seed.rotate_left(17);
    for b in label.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// A reproducible stream for one named sampling task.
pub fn stream(seed: u64, label: &str) -> ChaCha8Rng {
    seeded(sub_seed(seed, label))
}
