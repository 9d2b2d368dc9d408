use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use super::BitString;
use crate::error::{Error, Result};

/// Seeded source of fair bits.
///
/// Backed by ChaCha20 seeded from a 64-bit integer, so a seed fixes the bit
/// sequence on every platform. Independent streams of the same seed are
/// available through [`RandomBitSource::with_stream`]; a source itself is
/// single-owner.
#[derive(Clone, Debug)]
pub struct RandomBitSource {
    seed: u64,
    stream: u64,
    rng: ChaCha20Rng,
}

impl RandomBitSource {
    pub fn new(seed: u64) -> Self {
        Self::with_stream(seed, 0)
    }

    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { seed, stream, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    pub fn next_bit(&mut self) -> u8 {
        u8::from(self.rng.random::<bool>())
    }

    pub fn bits(&mut self, count: usize) -> Vec<u8> {
        (0..count).map(|_| self.next_bit()).collect()
    }
}

/// `n` independent fair bits from `source`.
pub fn random_bitstring(n: usize, source: &mut RandomBitSource) -> Result<BitString> {
    if n == 0 {
        return Err(Error::EmptyBitString);
    }
    BitString::new(source.bits(n))
}
