//! Fixed instance sets shared by the benchmarks.

use hyperrigid::fuzz::{random_discrete, random_interval, FuzzConfig};
use hyperrigid::GraphPresentation;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `n` discrete and `n` interval instances drawn from a fixed seed.
pub fn fuzzed(seed: u64, n: usize) -> Vec<GraphPresentation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = FuzzConfig::default();
    let mut out = Vec::with_capacity(2 * n);
    for _ in 0..n {
        out.push(GraphPresentation::Discrete(random_discrete(&mut rng, &cfg)));
        out.push(GraphPresentation::Interval(random_interval(&mut rng, &cfg)));
    }
    out
}
