use rand::seq::index::sample;

use super::source_rng;
use crate::error::{input, Result};
use crate::graph::NavGraph;
use crate::metric::{CountingMetric, Metric};

#[derive(Debug, Clone)]
pub struct ProbeOutcome {
    pub graph: NavGraph,
    /// Distance queries actually spent.
    pub queries: u64,
    /// Whether a probed pair turned out to be the unit-distance shortcut.
    pub found_shortcut: bool,
}

/// A query-capped builder for perturbed path metrics.
///
/// It always emits the path edges in both directions, which need no queries,
/// then spends its budget on distinct unordered pairs drawn uniformly at random.
/// Any probed pair at distance at most 1 is added in both directions. Without
/// that pair the output cannot be 1-navigable.
pub fn budget_probe(m: &Metric, budget: u64, seed: u64) -> Result<ProbeOutcome> {
    let n = m.n();
    if n < 2 {
        return Err(input("budget_probe needs at least 2 points"));
    }
    let cm = CountingMetric::with_budget(m, budget);
    let mut graph = NavGraph::from_edges(n, (0..n - 1).flat_map(|i| [(i, i + 1), (i + 1, i)]))?;
    let pairs = n * (n - 1) / 2;
    let draws = (budget as usize).min(pairs);
    let mut rng = source_rng(seed, 0);
    let mut found_shortcut = false;
    for idx in sample(&mut rng, pairs, draws) {
        let (i, j) = unrank_pair(n, idx);
        if cm.try_d(i, j)? <= 1.0 {
            graph.add_edge(i, j);
            graph.add_edge(j, i);
            found_shortcut |= j > i + 1;
        }
    }
    Ok(ProbeOutcome {
        graph,
        queries: cm.queries(),
        found_shortcut,
    })
}

/// Maps `idx` in `0..n(n-1)/2` to the pair `(i, j)`, `i < j`, in row order.
fn unrank_pair(n: usize, mut idx: usize) -> (usize, usize) {
    let mut i = 0;
    while idx >= n - 1 - i {
        idx -= n - 1 - i;
        i += 1;
    }
    (i, i + 1 + idx)
}
