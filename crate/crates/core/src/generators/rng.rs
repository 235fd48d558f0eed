use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

/// Name of the generator behind every seeded routine, recorded in experiment output.
pub const RNG_ALGORITHM: &str = "ChaCha20 (rand_chacha 0.3, 64-bit stream id)";

/// `(seed, stream)` pair; equal pairs give bit-identical generation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct RngSeed {
    pub seed: u64,
    #[serde(default)]
    pub stream: u64,
}

impl RngSeed {
    pub fn new(seed: u64) -> Self {
        RngSeed { seed, stream: 0 }
    }

    pub fn with_stream(self, stream: u64) -> Self {
        RngSeed { stream, ..self }
    }

    pub fn rng(&self) -> ChaCha20Rng {
        let mut rng = ChaCha20Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

impl From<u64> for RngSeed {
    fn from(seed: u64) -> Self {
        RngSeed::new(seed)
    }
}
