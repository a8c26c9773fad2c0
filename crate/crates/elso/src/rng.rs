//! Counter-based stream splitting for Monte Carlo replications.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator for one replication: the master seed keys the cipher and
/// the replication index selects an independent stream, so every
/// replication sees the same draws no matter how the work is scheduled.
pub fn replication_rng(master_seed: u64, replication: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(replication);
    rng
}
