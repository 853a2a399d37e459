//! Seeded, portable random streams.
//!
//! Every random quantity in the crate is drawn from a [`RngStream`], which
//! wraps the ChaCha8 stream cipher generator (`rand_chacha::ChaCha8Rng`).
//! ChaCha8 output depends only on the 64-bit seed and the 64-bit stream
//! index, so a `(seed, stream_index)` pair reproduces the same sequence on
//! every platform. Replicate `r` of an experiment draws from stream `r` of
//! the experiment's master seed.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Name of the generator algorithm, recorded in output headers.
pub const RNG_ALGORITHM: &str = "ChaCha8";

#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream_index: u64,
    inner: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream_index: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream_index);
        RngStream {
            seed,
            stream_index,
            inner,
        }
    }

    /// Stream 0 of `seed`.
    pub fn from_seed(seed: u64) -> Self {
        Self::new(seed, 0)
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_index(&self) -> u64 {
        self.stream_index
    }

    /// Uniform index in `0..len`. Samples through `u64` so the result does
    /// not depend on the platform's pointer width.
    pub(crate) fn index(&mut self, len: usize) -> usize {
        use rand::Rng;
        debug_assert!(len > 0);
        self.random_range(0..len as u64) as usize
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_and_stream_repeat() {
        let mut a = RngStream::new(17, 3);
        let mut b = RngStream::new(17, 3);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn streams_differ() {
        let mut a = RngStream::new(17, 0);
        let mut b = RngStream::new(17, 1);
        let xs: Vec<u64> = (0..8).map(|_| a.next_u64()).collect();
        let ys: Vec<u64> = (0..8).map(|_| b.next_u64()).collect();
        assert_ne!(xs, ys);
    }

    // Pins the generator so an accidental algorithm swap is caught.
    #[test]
    fn output_is_pinned() {
        let mut a = RngStream::new(0, 0);
        let first = a.next_u64();
        let mut b = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(first, b.next_u64());
    }
}
