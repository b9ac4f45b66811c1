//! Deterministic RNG streams.
//!
//! Every sampling decision in the pipeline draws from a stream derived from
//! the master seed, the review id, and a purpose label. Streams are
//! independent of each other and of scheduling, so per-review work can run in
//! parallel and still reproduce a serial run bit for bit.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// FNV-1a 64-bit hash; stable across platforms and releases.
pub fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Derive the seed for a labeled stream under `master`.
pub fn derive_seed(master: u64, sr_id: &str, label: &str) -> u64 {
    let mut buf = Vec::with_capacity(8 + sr_id.len() + 1 + label.len());
    buf.extend_from_slice(&master.to_le_bytes());
    buf.extend_from_slice(sr_id.as_bytes());
    buf.push(0);
    buf.extend_from_slice(label.as_bytes());
    fnv1a(&buf)
}

/// RNG for one (review, purpose) stream.
pub fn stream(master: u64, sr_id: &str, label: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(master, sr_id, label))
}
