use std::fmt;
use std::str::FromStr;
use web_time::Instant;

use serde::Serialize;

use super::{build_nav, fast_nav, greedy_nav, slow_diskann};
use crate::error::{input, Error, Result};
use crate::graph::NavGraph;
use crate::metric::{CountingMetric, Metric};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    SlowDiskann,
    Greedy,
    Fast,
    Bicriteria,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::SlowDiskann,
        Algorithm::Greedy,
        Algorithm::Fast,
        Algorithm::Bicriteria,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::SlowDiskann => "slow-diskann",
            Algorithm::Greedy => "greedy",
            Algorithm::Fast => "fast",
            Algorithm::Bicriteria => "bicriteria",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| input(format!("unknown algorithm {s:?}")))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BuildReport {
    pub algorithm: Algorithm,
    pub n: usize,
    pub alpha: f64,
    pub eps: Option<f64>,
    pub edge_count: usize,
    pub max_out_degree: usize,
    pub distance_query_count: u64,
    /// Seconds.
    pub wall_time: f64,
    pub seed: Option<u64>,
}

/// Runs one construction and records its report. `eps` is required for
/// `Bicriteria`; `seed` defaults to 0 for the randomized algorithms.
pub fn build(
    algorithm: Algorithm,
    m: &Metric,
    alpha: f64,
    eps: Option<f64>,
    seed: Option<u64>,
) -> Result<(NavGraph, BuildReport)> {
    let cm = CountingMetric::new(m);
    let start = Instant::now();
    let (graph, eps, seed, queries) = match algorithm {
        Algorithm::SlowDiskann => (slow_diskann(&cm, alpha)?, None, None, cm.queries()),
        Algorithm::Greedy => (greedy_nav(&cm, alpha)?, None, None, cm.queries()),
        Algorithm::Fast => {
            let seed = seed.unwrap_or(0);
            (
                fast_nav(&cm, alpha, seed)?.graph,
                None,
                Some(seed),
                cm.queries(),
            )
        }
        Algorithm::Bicriteria => {
            let eps = eps.ok_or_else(|| input("bicriteria needs eps"))?;
            let seed = seed.unwrap_or(0);
            let out = build_nav(m, alpha, eps, seed)?;
            // Every distance is read once to discretize; the rounds only see
            // the rounded values.
            let reads = (m.n() * m.n().saturating_sub(1)) as u64;
            (out.graph, Some(eps), Some(seed), reads)
        }
    };
    let wall_time = start.elapsed().as_secs_f64();
    let report = BuildReport {
        algorithm,
        n: m.n(),
        alpha,
        eps,
        edge_count: graph.edge_count(),
        max_out_degree: graph.max_out_degree(),
        distance_query_count: queries,
        wall_time,
        seed,
    };
    Ok((graph, report))
}
