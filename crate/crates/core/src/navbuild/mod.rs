//! Constructions of sparse navigable graphs and the batched verifier.
//!
//! Every construction reads distances through a [`CountingMetric`], so the
//! reported query counts reflect the metric lookups the algorithm body made.
//! Per-source work is independent and runs in parallel when the `parallel`
//! feature is on; per-source random streams keep results seed-deterministic.

mod bicriteria;
mod bitmatrix;
mod builders;
mod probe;
mod report;
mod verify;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::metric::CountingMetric;

pub use bicriteria::{build_nav, coverage_round, doubling_threshold, round_cap, BicriteriaOutcome};
pub use bitmatrix::{bool_matmul, BitMatrix};
pub use builders::{
    brute_force_min_degrees, fast_nav, greedy_nav, slow_diskann, source_cover_spec, FastNavOutcome,
    MAX_BRUTE_POINTS,
};
pub use probe::{budget_probe, ProbeOutcome};
pub use report::{build, Algorithm, BuildReport};
pub use verify::{adjacency_matrix, level_matrix, verify_nav_batched};

/// `t ∈ Z_alpha(s, u)`: the edge `(s, u)` satisfies the constraint from `s`
/// to `t`. Costs two distance queries.
#[inline]
pub fn z_contains(m: &CountingMetric<'_>, alpha: f64, s: usize, u: usize, t: usize) -> bool {
    m.d(u, t) < m.d(s, t) / alpha
}

/// Independent random stream for one source under a run seed.
pub fn source_rng(seed: u64, source: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(source as u64);
    rng
}

pub(crate) fn per_source<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Maps index `i` of `P \ {s}` back to a point index.
#[inline]
pub(crate) fn skip(s: usize, i: usize) -> usize {
    if i < s {
        i
    } else {
        i + 1
    }
}
