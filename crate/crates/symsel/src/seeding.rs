//! Deterministic RNG derivation.
//!
//! Every random choice in the crate flows from one master seed through
//! ChaCha8 streams. A derived generator is identified by a 64-bit
//! stream id with the layout
//!
//! ```text
//! bits 56..64  domain tag (what kind of randomness)
//! bits 40..56  fraction index   (< 2^16)
//! bits 16..40  K                (< 2^24)
//! bits  0..16  repetition       (< 2^16)
//! ```
//!
//! Distinct (domain, fraction, K, repetition) tuples map to distinct
//! streams, so experiment cells never share randomness and the whole
//! grid is reproducible from the master seed alone.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Domain tags for the top byte of a stream id.
#[derive(Debug, Clone, Copy)]
pub enum Domain {
    Split = 1,
    Selection = 2,
    Synthesis = 3,
    Probe = 4,
}

/// RNG for the given master seed and stream id.
pub fn stream_rng(master_seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(stream);
    rng
}

/// Pack a cell coordinate into a stream id. Panics if a field exceeds
/// its bit budget; real grids are orders of magnitude smaller.
pub fn cell_stream(domain: Domain, fraction_idx: usize, k: usize, rep: usize) -> u64 {
    assert!(fraction_idx < 1 << 16, "fraction index out of range");
    assert!(k < 1 << 24, "K out of range");
    assert!(rep < 1 << 16, "repetition out of range");
    ((domain as u64) << 56) | ((fraction_idx as u64) << 40) | ((k as u64) << 16) | rep as u64
}

/// A fresh 64-bit seed for a sub-computation that does its own
/// internal derivation (e.g. per-class clustering).
pub fn derive_seed(
    master_seed: u64,
    domain: Domain,
    fraction_idx: usize,
    k: usize,
    rep: usize,
) -> u64 {
    stream_rng(master_seed, cell_stream(domain, fraction_idx, k, rep)).gen()
}
