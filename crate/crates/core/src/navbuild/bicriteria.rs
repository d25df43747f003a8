//! Bicriteria construction: random edges toward uncovered targets, with all
//! sources re-verified together each round by Boolean matrix products.

use rand::Rng;

use super::{source_rng, verify_nav_batched};
use crate::error::{input, Error, Result};
use crate::graph::{check_alpha, verify_naive, NavGraph};
use crate::metric::{DiscretizedMetric, Metric};
use crate::setcover::AliveSet;

/// Failed rounds a source tolerates before doubling its budget:
/// `120 * log_{16/15} n`.
pub fn doubling_threshold(n: usize) -> f64 {
    120.0 * (n.max(2) as f64).ln() / (16.0f64 / 15.0).ln()
}

/// Safety cap on rounds: ten times `doubling_threshold(n) * log2 n`.
pub fn round_cap(n: usize) -> usize {
    let log2n = (n.max(2) as f64).log2().ceil();
    (10.0 * doubling_threshold(n).ceil() * log2n) as usize
}

#[derive(Debug, Clone)]
pub struct BicriteriaOutcome {
    pub graph: NavGraph,
    pub rounds: usize,
    /// Final per-source sampling budgets.
    pub budgets: Vec<usize>,
}

/// Builds an `alpha`-navigable graph whose size is within `O(ln n)` of the
/// sparsest `2 alpha (1 + eps)`-navigable graph.
///
/// Distances are rounded down to powers of `1 + eps`. Each round, every source
/// with uncovered targets draws `khat_s` of them uniformly (with replacement)
/// and links to them; one batched verification at `alpha (1 + eps)` then
/// recomputes all uncovered sets. A source whose set stays nonempty bumps its
/// counter, and once the counter has reached the doubling threshold the next
/// failure doubles `khat_s` and resets the counter instead.
pub fn build_nav(m: &Metric, alpha: f64, eps: f64, seed: u64) -> Result<BicriteriaOutcome> {
    check_alpha(alpha)?;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(input(format!("eps must lie in (0, 1), got {eps}")));
    }
    let n = m.n();
    let dm = m.discretize(eps)?;
    let alpha_eff = alpha * (1.0 + eps);
    let threshold = doubling_threshold(n);
    let cap = round_cap(n);

    let mut graph = NavGraph::empty(n);
    let mut uncovered: Vec<Vec<usize>> = (0..n)
        .map(|s| (0..n).filter(|&t| t != s).collect())
        .collect();
    let mut budgets = vec![1usize; n];
    let mut counters = vec![0f64; n];
    let mut rngs: Vec<_> = (0..n).map(|s| source_rng(seed, s)).collect();
    let mut rounds = 0;

    while uncovered.iter().any(|u| !u.is_empty()) {
        rounds += 1;
        if rounds > cap {
            return Err(Error::RoundCap {
                cap,
                uncovered: uncovered.iter().map(Vec::len).sum(),
            });
        }
        for s in 0..n {
            if uncovered[s].is_empty() {
                continue;
            }
            let alive = AliveSet::from_members(n, uncovered[s].iter().copied());
            for _ in 0..budgets[s] {
                let t = alive.sample(&mut rngs[s])?;
                graph.add_edge(s, t);
            }
        }
        let fresh = verify_nav_batched(&dm, &graph, alpha_eff)?;
        for s in 0..n {
            if fresh[s].is_empty() {
                continue;
            }
            if counters[s] >= threshold {
                budgets[s] *= 2;
                counters[s] = 0.0;
            } else {
                counters[s] += 1.0;
            }
        }
        uncovered = fresh;
    }

    let violations = verify_naive(&graph, m, alpha)?;
    if let Some(v) = violations.first() {
        return Err(Error::NotNavigable {
            count: violations.len(),
            s: v.s,
            t: v.t,
        });
    }
    Ok(BicriteriaOutcome {
        graph,
        rounds,
        budgets,
    })
}

/// One sampling step for a single source: draws `khat` targets from
/// `uncovered`, adds the edges to `graph`, and returns the source's uncovered
/// targets afterwards (batched check at `alpha (1 + eps)`).
pub fn coverage_round<R: Rng + ?Sized>(
    dm: &DiscretizedMetric,
    graph: &mut NavGraph,
    alpha: f64,
    source: usize,
    uncovered: &[usize],
    khat: usize,
    rng: &mut R,
) -> Result<Vec<usize>> {
    let alive = AliveSet::from_members(dm.n(), uncovered.iter().copied());
    for _ in 0..khat {
        graph.add_edge(source, alive.sample(rng)?);
    }
    let mut fresh = verify_nav_batched(dm, graph, alpha * (1.0 + dm.eps()))?;
    Ok(std::mem::take(&mut fresh[source]))
}
