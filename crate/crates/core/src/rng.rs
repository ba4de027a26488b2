//! Deterministic random streams.
//!
//! A run owns one master seed. Every subsystem and entity draws from its own
//! ChaCha8 stream: the key comes from the master seed and the 64-bit stream
//! id encodes `(subsystem, entity)`. Streams never share state, so adding a
//! user or reordering work does not perturb any other stream.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u16)]
pub enum Subsystem {
    Placement = 1,
    Mobility = 2,
    Shadowing = 3,
    Profile = 4,
    Behavior = 5,
    Access = 6,
}

/// Returns the stream for `(subsystem, entity)` under `seed`.
pub fn stream(seed: u64, subsystem: Subsystem, entity: u64) -> SimRng {
    debug_assert!(entity < 1 << 48, "entity id overflows stream id");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((subsystem as u64) << 48) | entity);
    rng
}
