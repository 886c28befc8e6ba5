//! Portable random stream used by every generator.
//!
//! The stream is ChaCha8 (as implemented by `rand_chacha` 0.3) seeded with
//! `seed_from_u64`. All draws are derived from `next_u64` with the mappings
//! below, so a seed yields the same graph on every platform:
//!
//! * uniform float: `(x >> 11) * 2^-53`, a value in `[0, 1)`;
//! * Bernoulli(p): `uniform() < p`, so `p = 0` never fires and `p = 1` always does;
//! * index below `n`: Lemire's multiply-shift with rejection (unbiased).

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

#[derive(Debug, Clone)]
pub struct GraphRng(ChaCha8Rng);

impl GraphRng {
    pub fn new(seed: u64) -> Self {
        GraphRng(ChaCha8Rng::seed_from_u64(seed))
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    #[inline]
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    #[inline]
    pub fn chance(&mut self, p: f64) -> bool {
        self.uniform() < p
    }

    /// Uniform integer in `0..n`. Panics if `n == 0`.
    #[inline]
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0, "empty range");
        let n = n as u64;
        let threshold = n.wrapping_neg() % n;
        loop {
            let m = (self.next_u64() as u128) * (n as u128);
            if (m as u64) >= threshold {
                return (m >> 64) as usize;
            }
        }
    }
}

/// SplitMix64 finalizer.
#[inline]
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of replicate `k` in a batch: `splitmix64(base ^ splitmix64(k))`.
pub fn replicate_seed(base_seed: u64, k: u64) -> u64 {
    splitmix64(base_seed ^ splitmix64(k))
}
