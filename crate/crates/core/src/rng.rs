//! Seedable, splittable random streams.
//!
//! Every stochastic operation takes an explicit `&mut impl Rng`. Simulation
//! frames draw from independent ChaCha streams addressed by
//! `(master seed, snr index, frame index)`, so a frame's draws do not depend
//! on thread scheduling or on which other frames were simulated.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

const FRAME_BITS: u32 = 40;

pub fn seeded(seed: u64) -> SimRng {
    SimRng::seed_from_u64(seed)
}

/// Independent stream for one simulated frame.
///
/// Supports up to 2^40 frames per SNR point and 2^24 SNR points.
pub fn frame_stream(master_seed: u64, snr_index: usize, frame_index: u64) -> SimRng {
    debug_assert!(frame_index < 1 << FRAME_BITS);
    let mut rng = SimRng::seed_from_u64(master_seed);
    rng.set_stream(((snr_index as u64) << FRAME_BITS) | frame_index);
    rng
}
