//! Deterministic, addressable random streams.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A `(master_seed, stream_index)` pair naming one ChaCha8 keystream.
///
/// Equal pairs reproduce equal sequences; distinct stream indices under the
/// same seed are independent keystreams.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngStream {
    pub master_seed: u64,
    pub stream_index: u64,
}

impl RngStream {
    pub fn new(master_seed: u64, stream_index: u64) -> Self {
        RngStream {
            master_seed,
            stream_index,
        }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.stream_index);
        rng
    }

    /// Derives an independent child stream keyed by `tag`.
    ///
    /// The child's seed is the word at position `tag` of this keystream, so
    /// distinct tags give distinct children and the mapping is stable across
    /// platforms.
    pub fn derive(&self, tag: u64) -> RngStream {
        let mut rng = self.rng();
        rng.set_word_pos(u128::from(tag) * 2);
        let seed = rng.next_u64();
        RngStream::new(seed, tag)
    }

    /// Derives a stream from a path of tags, e.g. `[budget, algorithm, phase]`.
    pub fn derive_path(&self, tags: &[u64]) -> RngStream {
        tags.iter().fold(*self, |s, &t| s.derive(t))
    }
}
