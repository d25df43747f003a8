use std::cmp::Ordering;

use super::{per_source, skip, source_rng, z_contains};
use crate::error::{Error, Result};
use crate::graph::{check_alpha, verify_naive, NavGraph};
use crate::metric::{CountingMetric, Metric};
use crate::setcover::{
    brute_force_min_cover, fast_set_cover, greedy_cover, MembershipView, SetCoverSpec,
};

/// Largest point count accepted by [`brute_force_min_degrees`].
pub const MAX_BRUTE_POINTS: usize = 12;

/// DiskANN with slow preprocessing: for each source, walk the other points in
/// order of increasing distance (index breaks ties), add an edge to each point
/// not yet pruned, and prune every `t` the new edge already serves.
pub fn slow_diskann(cm: &CountingMetric<'_>, alpha: f64) -> Result<NavGraph> {
    check_alpha(alpha)?;
    let n = cm.n();
    let out = per_source(n, |s| {
        let mut order: Vec<(f64, usize)> = (0..n)
            .filter(|&t| t != s)
            .map(|t| (cm.d(s, t), t))
            .collect();
        order.sort_by(|a, b| {
            a.0.partial_cmp(&b.0)
                .unwrap_or(Ordering::Equal)
                .then(a.1.cmp(&b.1))
        });
        let mut pruned = vec![false; n];
        let mut nbrs = Vec::new();
        for (i, &(_, u)) in order.iter().enumerate() {
            if pruned[u] {
                continue;
            }
            nbrs.push(u);
            pruned[u] = true;
            for &(d_st, t) in &order[i + 1..] {
                if !pruned[t] && cm.d(u, t) < d_st / alpha {
                    pruned[t] = true;
                }
            }
        }
        nbrs
    });
    NavGraph::from_adjacency(out)
}

/// The covering instance of source `s`: universe `P \ {s}`, one set
/// `Z_alpha(s, u)` per `u != s`, both indexed by skipping `s`.
pub fn source_cover_spec(cm: &CountingMetric<'_>, alpha: f64, s: usize) -> SetCoverSpec {
    let n = cm.n();
    let sets = (0..n.saturating_sub(1))
        .map(|ui| {
            let u = skip(s, ui);
            (0..n - 1)
                .filter(|&ti| z_contains(cm, alpha, s, u, skip(s, ti)))
                .collect()
        })
        .collect();
    SetCoverSpec::new(n.saturating_sub(1), sets).expect("indices are in range")
}

/// Per-source greedy set cover over the explicit sets `Z_alpha(s, u)`.
/// Within `ln n + 1` of the optimum degree at every source.
pub fn greedy_nav(cm: &CountingMetric<'_>, alpha: f64) -> Result<NavGraph> {
    check_alpha(alpha)?;
    let n = cm.n();
    let out = per_source(n, |s| -> Result<Vec<usize>> {
        let spec = source_cover_spec(cm, alpha, s);
        let cover = greedy_cover(&spec)?;
        Ok(cover.sets.into_iter().map(|ui| skip(s, ui)).collect())
    });
    NavGraph::from_adjacency(out.into_iter().collect::<Result<_>>()?)
}

/// Membership view of one source's covering instance, answered from the metric.
struct SourceView<'a, 'm> {
    cm: &'a CountingMetric<'m>,
    alpha: f64,
    s: usize,
}

impl MembershipView for SourceView<'_, '_> {
    fn universe_size(&self) -> usize {
        self.cm.n() - 1
    }

    fn family_size(&self) -> usize {
        self.cm.n() - 1
    }

    #[inline]
    fn contains(&self, set: usize, element: usize) -> bool {
        z_contains(
            self.cm,
            self.alpha,
            self.s,
            skip(self.s, set),
            skip(self.s, element),
        )
    }
}

#[derive(Debug, Clone)]
pub struct FastNavOutcome {
    pub graph: NavGraph,
    /// Membership queries summed over sources (each costs two distance reads).
    pub membership_queries: u64,
}

/// Per-source membership-query set cover. The result is checked against the
/// direct verifier before it is returned.
pub fn fast_nav(cm: &CountingMetric<'_>, alpha: f64, seed: u64) -> Result<FastNavOutcome> {
    check_alpha(alpha)?;
    let n = cm.n();
    let out = per_source(n, |s| -> Result<(Vec<usize>, u64)> {
        if n < 2 {
            return Ok((Vec::new(), 0));
        }
        let view = SourceView { cm, alpha, s };
        let mut rng = source_rng(seed, s);
        let fc = fast_set_cover(&view, &mut rng)?;
        Ok((
            fc.cover.sets.into_iter().map(|ui| skip(s, ui)).collect(),
            fc.queries,
        ))
    });
    let mut adj = Vec::with_capacity(n);
    let mut queries = 0;
    for r in out {
        let (nbrs, q) = r?;
        adj.push(nbrs);
        queries += q;
    }
    let graph = NavGraph::from_adjacency(adj)?;
    let violations = verify_naive(&graph, cm.inner(), alpha)?;
    if let Some(v) = violations.first() {
        return Err(Error::NotNavigable {
            count: violations.len(),
            s: v.s,
            t: v.t,
        });
    }
    Ok(FastNavOutcome {
        graph,
        membership_queries: queries,
    })
}

/// Exact minimum out-degree of every source over all `alpha`-navigable graphs.
/// The constraints decompose by source, so the optimum edge count is the sum.
pub fn brute_force_min_degrees(m: &Metric, alpha: f64) -> Result<Vec<usize>> {
    check_alpha(alpha)?;
    if m.n() > MAX_BRUTE_POINTS {
        return Err(Error::TooLarge(format!(
            "{} points (limit {MAX_BRUTE_POINTS})",
            m.n()
        )));
    }
    let cm = CountingMetric::new(m);
    (0..m.n())
        .map(|s| brute_force_min_cover(&source_cover_spec(&cm, alpha, s)))
        .collect()
}
