//! Seeded, platform-independent random streams.
//!
//! The generator is SplitMix64: a 64-bit counter advanced by a fixed odd
//! increment and passed through a multiply-xorshift finalizer. It only uses
//! wrapping integer arithmetic, so a given seed yields the same words on
//! every platform. Doubles take the top 53 bits, giving values in `[0, 1)`.

use std::f64::consts::PI;

use crate::constants::{SEED_HASH_INIT, SUITE_SALT, SPLITMIX_GAMMA, SPLITMIX_MUL_1, SPLITMIX_MUL_2, UNIT_SCALE};

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(SPLITMIX_MUL_1);
    z = (z ^ (z >> 27)).wrapping_mul(SPLITMIX_MUL_2);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeededStream {
    seed: u64,
    state: u64,
}

impl SeededStream {
    pub fn new(seed: u64) -> Self {
        SeededStream { seed, state: seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(SPLITMIX_GAMMA);
        mix64(self.state)
    }

    /// Uniform double in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * UNIT_SCALE
    }

    /// Uniform double in `[lo, hi)`.
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Box-Muller on the next two uniforms `(u1, u2)`: returns
    /// `(r cos(2 pi u2), r sin(2 pi u2))` with `r = sqrt(-2 ln(1 - u1))`.
    pub fn next_gaussian_pair(&mut self) -> (f64, f64) {
        let u1 = self.next_f64();
        let u2 = self.next_f64();
        // 1 - u1 lies in (0, 1], so the logarithm is finite.
        let r = (-2.0 * (1.0 - u1).ln()).sqrt();
        let theta = 2.0 * PI * u2;
        (r * theta.cos(), r * theta.sin())
    }

    /// Uniform index in `0..n` (n > 0).
    pub fn index_below(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        ((self.next_f64() * n as f64) as usize).min(n - 1)
    }
}

pub fn uniform_stream(seed: u64, n: usize) -> Vec<f64> {
    let mut stream = SeededStream::new(seed);
    (0..n).map(|_| stream.next_f64()).collect()
}

/// Standard normal draws. Pair `k` of the underlying uniform stream yields
/// outputs `2k` (cosine branch) and `2k + 1` (sine branch); for odd `n` the
/// final sine branch is dropped.
pub fn gaussian_stream(seed: u64, n: usize) -> Vec<f64> {
    let mut stream = SeededStream::new(seed);
    let mut out = Vec::with_capacity(n + 1);
    while out.len() < n {
        let (a, b) = stream.next_gaussian_pair();
        out.push(a);
        out.push(b);
    }
    out.truncate(n);
    out
}

/// Which random quantity of an instance a seed feeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u64)]
pub enum StreamTag {
    OptimumLocation = 1,
    OptimumValue = 2,
    RotationR = 3,
    RotationQ = 4,
    PeakLocations = 5,
    PeakConditioning = 6,
    Optimizer = 7,
}

/// Hash of `(function_id, instance_id, dim, tag)` into a stream seed.
///
/// The suite salt goes first; each argument is xored into the running value and passed through the
/// SplitMix64 finalizer after adding the increment, so that changing any
/// single argument decorrelates the resulting stream.
pub fn derive_seed(function_id: u64, instance_id: u64, dim: u64, tag: u64) -> u64 {
    [SUITE_SALT, function_id, instance_id, dim, tag]
        .iter()
        .fold(SEED_HASH_INIT, |h, &v| mix64((h ^ v).wrapping_add(SPLITMIX_GAMMA)))
}
