//! Deterministic seed derivation.
//!
//! Every random stream is identified by a `(master_seed, stream_index)` pair.
//! The pair is collapsed to a single 64-bit seed with one SplitMix64 step
//! applied to `master_seed ^ (stream_index * GOLDEN_GAMMA)`, and that seed
//! initialises a PCG generator. Distinct workers must use distinct stream
//! indices; nothing else is shared.

use rand::{Rng, SeedableRng};
use rand_pcg::Pcg64Mcg;

/// Odd constant derived from the golden ratio, used as the SplitMix64 increment.
pub const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// The generator backing every stream.
pub type StreamRng = Pcg64Mcg;

/// SplitMix64 output finaliser. A bijection on `u64`.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// First output of a SplitMix64 generator whose state is `state`.
#[inline]
pub fn splitmix64(state: u64) -> u64 {
    mix64(state.wrapping_add(GOLDEN_GAMMA))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeedSpec {
    pub master_seed: u64,
    pub stream_index: u64,
}

impl SeedSpec {
    pub fn new(master_seed: u64, stream_index: u64) -> Self {
        Self {
            master_seed,
            stream_index,
        }
    }

    /// The 64-bit seed for this stream.
    pub fn derived_seed(&self) -> u64 {
        splitmix64(self.master_seed ^ self.stream_index.wrapping_mul(GOLDEN_GAMMA))
    }

    pub fn rng(&self) -> StreamRng {
        StreamRng::seed_from_u64(self.derived_seed())
    }
}

/// Uniform draw on the open interval (0, 1); zero is resampled.
#[inline]
pub fn open_unit<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    loop {
        let u: f64 = rng.random();
        if u > 0.0 {
            return u;
        }
    }
}
