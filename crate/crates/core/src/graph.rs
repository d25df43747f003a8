//! Directed graphs over metric points and the direct navigability check.

use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::metric::Metric;

/// Directed graph stored as sorted, duplicate-free out-neighbor lists.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NavGraph {
    out: Vec<Vec<usize>>,
}

/// An ordered pair `(s, t)` whose navigability constraint no out-edge of `s`
/// satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Violation {
    pub s: usize,
    pub t: usize,
}

impl NavGraph {
    pub fn empty(n: usize) -> Self {
        Self {
            out: vec![Vec::new(); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        Self {
            out: (0..n)
                .map(|s| (0..n).filter(|&t| t != s).collect())
                .collect(),
        }
    }

    /// Builds a graph from arbitrary per-source lists, sorting and deduplicating.
    pub fn from_adjacency(mut out: Vec<Vec<usize>>) -> Result<Self> {
        let n = out.len();
        for (s, list) in out.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            if let Some(&t) = list.iter().find(|&&t| t >= n || t == s) {
                return Err(input(format!(
                    "invalid edge ({s}, {t}) in graph on {n} vertices"
                )));
            }
        }
        Ok(Self { out })
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut out = vec![Vec::new(); n];
        for (s, t) in edges {
            if s >= n {
                return Err(input(format!(
                    "edge source {s} out of range for {n} vertices"
                )));
            }
            out[s].push(t);
        }
        Self::from_adjacency(out)
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn out(&self, s: usize) -> &[usize] {
        &self.out[s]
    }

    pub fn has_edge(&self, s: usize, t: usize) -> bool {
        self.out[s].binary_search(&t).is_ok()
    }

    /// Inserts `(s, t)`; returns false if it was already present.
    pub fn add_edge(&mut self, s: usize, t: usize) -> bool {
        assert!(s != t && t < self.n(), "invalid edge ({s}, {t})");
        match self.out[s].binary_search(&t) {
            Ok(_) => false,
            Err(pos) => {
                self.out[s].insert(pos, t);
                true
            }
        }
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn max_out_degree(&self) -> usize {
        self.out.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `(max_out_degree, edge_count)`.
    pub fn degree_stats(&self) -> (usize, usize) {
        (self.max_out_degree(), self.edge_count())
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(s, list)| list.iter().map(move |&t| (s, t)))
    }

    pub fn union(&self, other: &NavGraph) -> Result<NavGraph> {
        if self.n() != other.n() {
            return Err(Error::Dimension {
                expected: self.n(),
                got: other.n(),
            });
        }
        let out = self
            .out
            .iter()
            .zip(&other.out)
            .map(|(a, b)| a.iter().chain(b).copied().collect())
            .collect();
        Self::from_adjacency(out)
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha >= 1.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(input(format!(
            "alpha must be a finite value >= 1, got {alpha}"
        )))
    }
}

/// Uncovered targets of a single source, ascending.
pub fn uncovered_from(g: &NavGraph, m: &Metric, alpha: f64, s: usize) -> Vec<usize> {
    let out = g.out(s);
    let row_s = m.row(s);
    (0..m.n())
        .filter(|&t| t != s)
        .filter(|&t| {
            let bound = row_s[t] / alpha;
            !out.iter().any(|&u| m.d(u, t) < bound)
        })
        .collect()
}

/// Every ordered pair `(s, t)`, `s != t`, for which no out-neighbor `u` of `s`
/// has `d(u, t) < d(s, t) / alpha`, in lexicographic order.
pub fn verify_naive(g: &NavGraph, m: &Metric, alpha: f64) -> Result<Vec<Violation>> {
    check_alpha(alpha)?;
    if g.n() != m.n() {
        return Err(Error::Dimension {
            expected: m.n(),
            got: g.n(),
        });
    }
    let per_source = |s: usize| -> Vec<Violation> {
        uncovered_from(g, m, alpha, s)
            .into_iter()
            .map(|t| Violation { s, t })
            .collect()
    };
    #[cfg(feature = "parallel")]
    let rows: Vec<Vec<Violation>> = {
        use rayon::prelude::*;
        (0..m.n()).into_par_iter().map(per_source).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<Vec<Violation>> = (0..m.n()).map(per_source).collect();
    Ok(rows.into_iter().flatten().collect())
}

pub fn is_navigable(g: &NavGraph, m: &Metric, alpha: f64) -> Result<bool> {
    Ok(verify_naive(g, m, alpha)?.is_empty())
}
