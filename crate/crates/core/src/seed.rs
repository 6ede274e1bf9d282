//! Deterministic seed derivation.
//!
//! Every random stream in the crate is seeded from `derive_seed(base, stream, index)`
//! so results do not depend on the order in which parallel work completes.
//! The mixer is the SplitMix64 finalizer (increment `0x9E3779B97F4A7C15`,
//! multipliers `0xBF58476D1CE4E5B9` and `0x94D049BB133111EB`).

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// One SplitMix64 step: add the golden gamma, then avalanche.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `splitmix64(splitmix64(splitmix64(base) ^ stream) ^ index)`.
pub fn derive_seed(base: u64, stream: u64, index: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(base) ^ stream) ^ index)
}

// Stream tags; distinct constants keep the derived families disjoint.
pub(crate) const STREAM_SAMPLE: u64 = 0x5341_4D50; // "SAMP"
pub(crate) const STREAM_VERSION: u64 = 0x5645_5253; // "VERS"
pub(crate) const STREAM_SHUFFLE: u64 = 0x5348_5546; // "SHUF"
pub(crate) const STREAM_CASE: u64 = 0x4341_5345; // "CASE"
pub(crate) const STREAM_BASELINE: u64 = 0x4241_5345; // "BASE"
pub(crate) const STREAM_HPE: u64 = 0x4850_4520; // "HPE "
