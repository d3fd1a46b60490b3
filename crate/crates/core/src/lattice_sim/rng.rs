//! Random-access sample streams: every (seed, stream, sample index) maps to
//! fixed ChaCha8 words, so draws do not depend on how samples are chunked.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// 32-bit words reserved per sample in every stream.
const WORDS_PER_SAMPLE: u128 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stream {
    S = 1,
    Z1,
    Z2,
    D0,
    D1,
    D2,
    V0,
    V1,
    V2,
}

/// Sequential reader positioned at a sample index of one stream.
pub struct StreamReader {
    rng: ChaCha8Rng,
}

impl StreamReader {
    pub fn new(seed: u64, stream: Stream, start: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream as u64);
        rng.set_word_pos(start as u128 * WORDS_PER_SAMPLE);
        StreamReader { rng }
    }

    /// Uniform on [0, 1); consumes one sample slot.
    pub fn uniform(&mut self) -> f64 {
        let u: f64 = self.rng.gen();
        let _: u64 = self.rng.gen();
        u
    }

    /// Standard normal by Box–Muller; consumes one sample slot.
    pub fn normal(&mut self) -> f64 {
        let u1: f64 = 1.0 - self.rng.gen::<f64>();
        let u2: f64 = self.rng.gen();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }
}
