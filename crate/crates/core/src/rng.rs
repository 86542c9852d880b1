//! Derived random streams.
//!
//! Every random decision in a run draws from a stream keyed by
//! `(master seed, purpose, generation, index)`. Streams are never shared
//! between tasks, so results do not depend on how work is scheduled.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// What a stream is used for; part of the derivation key.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Purpose {
    Init = 1,
    Tournament = 2,
    Offspring = 3,
    Generator = 4,
    Experiment = 5,
    Test = 6,
}

/// Generator type handed to operators.
pub type RngStream = ChaCha8Rng;

#[inline]
fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Mixes the derivation key into a single 64-bit value.
pub fn derive_seed(master: u64, purpose: Purpose, generation: u64, index: u64) -> u64 {
    let mut h = splitmix(master);
    for part in [purpose as u64, generation, index] {
        h = splitmix(h ^ part.wrapping_mul(0xD6E8_FEB8_6659_FD93));
    }
    h
}

/// Stream for one `(purpose, generation, index)` slot of a run.
pub fn stream(master: u64, purpose: Purpose, generation: u64, index: u64) -> RngStream {
    let base = derive_seed(master, purpose, generation, index);
    let mut seed = [0u8; 32];
    let mut h = base;
    for chunk in seed.chunks_exact_mut(8) {
        h = splitmix(h);
        chunk.copy_from_slice(&h.to_le_bytes());
    }
    ChaCha8Rng::from_seed(seed)
}
