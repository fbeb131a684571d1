//! Counter-based random substreams.
//!
//! Every random draw in an ensemble run comes from a stream that is a pure
//! function of `(master_seed, domain, index)`, so results never depend on
//! how realizations are scheduled across workers.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Stream = ChaCha8Rng;

/// Domain tag for disorder realizations.
pub const REALIZATIONS: u64 = 0;
/// Domain tag for the slice-strength calibration probes.
pub const CALIBRATION: u64 = 0x6361_6c69_6272_6174;
/// Domain tag for ad-hoc draws made by the CLI (oracle cross-checks).
pub const ORACLE: u64 = 0x6f72_6163_6c65_0000;

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Stream `index` of domain `domain` under `master_seed`.
pub fn substream(master_seed: u64, domain: u64, index: u64) -> Stream {
    let key = if domain == REALIZATIONS {
        master_seed
    } else {
        splitmix64(master_seed ^ splitmix64(domain))
    };
    let mut rng = ChaCha8Rng::seed_from_u64(key);
    rng.set_stream(index);
    rng
}

/// Stream for disorder realization `index`.
pub fn realization_stream(master_seed: u64, index: u64) -> Stream {
    substream(master_seed, REALIZATIONS, index)
}
