//! Counter-keyed phase generator.
//!
//! Draw `j` of sample `i` under `seed` is a pure function of `(seed, i, j)`:
//! the seed keys a ChaCha8 stream cipher, the sample index selects the stream
//! and each draw consumes two 32-bit words at word position `2j`.

use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TWO_PI: f64 = std::f64::consts::TAU;

pub struct PhaseGenerator {
    rng: ChaCha8Rng,
}

impl PhaseGenerator {
    pub fn new(seed: u64, counter: u64) -> Self {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.to_le_bytes());
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(counter);
        Self { rng }
    }

    /// Jump so that the next draw is draw number `index`.
    pub fn seek(&mut self, index: u64) {
        self.rng.set_word_pos(2 * index as u128);
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    #[inline]
    pub fn next_unit(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform point on the unit circle.
    #[inline]
    pub fn next_phase(&mut self) -> Complex64 {
        let (s, c) = (TWO_PI * self.next_unit()).sin_cos();
        Complex64::new(c, s)
    }
}

/// Draw `index` of sample `counter` under `seed`.
pub fn unit_at(seed: u64, counter: u64, index: u64) -> f64 {
    let mut g = PhaseGenerator::new(seed, counter);
    g.seek(index);
    g.next_unit()
}
