//! Benchmark suites producing CSV tables.

use std::fmt;
use std::str::FromStr;
use web_time::Instant;

use serde::Serialize;

use crate::error::{input, Error, Result};
use crate::graph::{is_navigable, verify_naive, NavGraph};
use crate::instances::{
    binary_tree_pointset, binary_tree_reference_graph, perturbed_path,
    perturbed_path_reference_graph, planted_set_cover, random_euclidean,
};
use crate::metric::{CountingMetric, Metric};
use crate::navbuild::{
    budget_probe, build, build_nav, greedy_nav, slow_diskann, source_rng, verify_nav_batched,
    Algorithm,
};
use crate::setcover::{fast_set_cover, greedy_cover};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    DiskannGap,
    SetcoverScaling,
    BicriteriaQuality,
    QueryLbDemo,
    VerifySpeed,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::DiskannGap,
        Suite::SetcoverScaling,
        Suite::BicriteriaQuality,
        Suite::QueryLbDemo,
        Suite::VerifySpeed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::DiskannGap => "diskann-gap",
            Suite::SetcoverScaling => "setcover-scaling",
            Suite::BicriteriaQuality => "bicriteria-quality",
            Suite::QueryLbDemo => "query-lb-demo",
            Suite::VerifySpeed => "verify-speed",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| input(format!("unknown suite {s:?}")))
    }
}

/// One CSV row. For set-cover rows `n` is the universe size, `edges` the
/// cover size and `maxdeg` the planted optimum. `detail` carries
/// suite-specific `key=value` notes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub instance: String,
    pub algorithm: String,
    pub n: usize,
    pub alpha: f64,
    pub edges: usize,
    pub maxdeg: usize,
    pub queries: u64,
    pub seconds: f64,
    pub navigable: bool,
    pub detail: String,
}

pub const CSV_HEADER: &str =
    "instance,algorithm,n,alpha,edges,maxdeg,queries,seconds,navigable,detail";

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{:.6},{},{}\n",
            r.instance,
            r.algorithm,
            r.n,
            r.alpha,
            r.edges,
            r.maxdeg,
            r.queries,
            r.seconds,
            r.navigable,
            r.detail
        ));
    }
    out
}

fn graph_row(
    instance: &str,
    algorithm: &str,
    m: &Metric,
    alpha: f64,
    g: &NavGraph,
    queries: u64,
    seconds: f64,
) -> Result<BenchRow> {
    Ok(BenchRow {
        instance: instance.to_string(),
        algorithm: algorithm.to_string(),
        n: m.n(),
        alpha,
        edges: g.edge_count(),
        maxdeg: g.max_out_degree(),
        queries,
        seconds,
        navigable: is_navigable(g, m, alpha)?,
        detail: String::new(),
    })
}

pub fn run_suite(suite: Suite, seed: u64) -> Result<Vec<BenchRow>> {
    match suite {
        Suite::DiskannGap => diskann_gap(&[8, 16, 32, 64]),
        Suite::SetcoverScaling => setcover_scaling(500, &[2, 4, 8, 16], seed),
        Suite::BicriteriaQuality => bicriteria_quality(&[32, 64, 128], seed),
        Suite::QueryLbDemo => query_lb_demo(200, 50),
        Suite::VerifySpeed => verify_speed(&[128, 256, 512], seed),
    }
}

/// Slow DiskANN against greedy and the tree reference graph on binary-tree
/// pointsets with shrunken leaves.
pub fn diskann_gap(sizes: &[usize]) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for &n in sizes {
        let m = Metric::from_points(&binary_tree_pointset(n, 1e-4)?)?;
        let inst = format!("binary-tree-{n}");
        for alg in [Algorithm::SlowDiskann, Algorithm::Greedy] {
            let (g, rep) = build(alg, &m, 1.0, None, None)?;
            rows.push(graph_row(
                &inst,
                alg.name(),
                &m,
                1.0,
                &g,
                rep.distance_query_count,
                rep.wall_time,
            )?);
        }
        let h = binary_tree_reference_graph(n)?;
        rows.push(graph_row(&inst, "reference", &m, 1.0, &h, 0, 0.0)?);
    }
    Ok(rows)
}

/// Membership queries of the sampling set cover on planted instances.
pub fn setcover_scaling(n: usize, ks: &[usize], seed: u64) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for &k in ks {
        let spec = planted_set_cover(n, n, k, 3, seed ^ k as u64)?;
        let view = spec.view();
        let start = Instant::now();
        let fc = fast_set_cover(&view, &mut source_rng(seed, k))?;
        let seconds = start.elapsed().as_secs_f64();
        let valid = spec.is_cover(&fc.cover.sets);
        rows.push(BenchRow {
            instance: format!("planted-k{k}"),
            algorithm: "fast-set-cover".into(),
            n,
            alpha: 0.0,
            edges: fc.cover.len(),
            maxdeg: k,
            queries: fc.queries,
            seconds,
            navigable: valid,
            detail: format!("khat={}", fc.khat),
        });
        let start = Instant::now();
        let g = greedy_cover(&spec)?;
        rows.push(BenchRow {
            instance: format!("planted-k{k}"),
            algorithm: "greedy-set-cover".into(),
            n,
            alpha: 0.0,
            edges: g.len(),
            maxdeg: k,
            queries: (n * n) as u64,
            seconds: start.elapsed().as_secs_f64(),
            navigable: spec.is_cover(&g.sets),
            detail: String::new(),
        });
    }
    Ok(rows)
}

/// Bicriteria construction at `alpha = 1, eps = 0.1` against greedy at 2.2.
pub fn bicriteria_quality(sizes: &[usize], seed: u64) -> Result<Vec<BenchRow>> {
    let (alpha, eps) = (1.0, 0.1);
    let mut rows = Vec::new();
    for &n in sizes {
        let m = Metric::from_points(&random_euclidean(n, 4, seed)?)?;
        let inst = format!("euclidean-{n}-d4");
        let start = Instant::now();
        let out = build_nav(&m, alpha, eps, seed)?;
        let mut row = graph_row(
            &inst,
            "bicriteria",
            &m,
            alpha,
            &out.graph,
            (n * (n - 1)) as u64,
            start.elapsed().as_secs_f64(),
        )?;
        row.detail = format!("rounds={}", out.rounds);
        let beta = 2.0 * alpha * (1.0 + eps);
        let cm = CountingMetric::new(&m);
        let start = Instant::now();
        let g = greedy_nav(&cm, beta)?;
        let base = graph_row(
            &inst,
            "greedy",
            &m,
            beta,
            &g,
            cm.queries(),
            start.elapsed().as_secs_f64(),
        )?;
        let ratio = row.edges as f64 / (base.edges as f64 * (n as f64).ln());
        row.detail.push_str(&format!(" ratio_over_ln_n={ratio:.3}"));
        rows.push(row);
        rows.push(base);
    }
    Ok(rows)
}

/// A query-capped builder with `n^1.5` queries on perturbed paths, one row per
/// seed, then the reference graph and a summary row with the miss fraction.
pub fn query_lb_demo(n: usize, seeds: u64) -> Result<Vec<BenchRow>> {
    let budget = (n as f64).powf(1.5).floor() as u64;
    let mut rows = Vec::new();
    let mut misses = 0;
    for seed in 0..seeds {
        let inst = perturbed_path(n, seed)?;
        let start = Instant::now();
        let out = budget_probe(&inst.metric, budget, seed)?;
        let mut row = graph_row(
            &format!("perturbed-path-{n}-s{seed}"),
            "budget-probe",
            &inst.metric,
            1.0,
            &out.graph,
            out.queries,
            start.elapsed().as_secs_f64(),
        )?;
        if !row.navigable {
            misses += 1;
        }
        row.detail = format!("hidden={}-{}", inst.hidden_pair.0, inst.hidden_pair.1);
        rows.push(row);
        let h = perturbed_path_reference_graph(&inst)?;
        rows.push(graph_row(
            &format!("perturbed-path-{n}-s{seed}"),
            "reference",
            &inst.metric,
            1.0,
            &h,
            0,
            0.0,
        )?);
    }
    rows.push(BenchRow {
        instance: format!("perturbed-path-{n}"),
        algorithm: "budget-probe-summary".into(),
        n,
        alpha: 1.0,
        edges: 0,
        maxdeg: 0,
        queries: budget,
        seconds: 0.0,
        navigable: false,
        detail: format!("miss_fraction={:.4}", misses as f64 / seeds as f64),
    });
    Ok(rows)
}

/// Wall time of the direct verifier against the batched one on random
/// Euclidean metrics with a slow DiskANN graph.
pub fn verify_speed(sizes: &[usize], seed: u64) -> Result<Vec<BenchRow>> {
    let (alpha, eps) = (1.0, 0.1);
    let mut rows = Vec::new();
    for &n in sizes {
        let m = Metric::from_points(&random_euclidean(n, 8, seed)?)?;
        let g = slow_diskann(&CountingMetric::new(&m), 1.2)?;
        let dm = m.discretize(eps)?;
        let rounded = dm.rounded_metric();
        let inst = format!("euclidean-{n}-d8");

        let start = Instant::now();
        let naive = verify_naive(&g, &rounded, alpha)?;
        let t_naive = start.elapsed().as_secs_f64();
        let start = Instant::now();
        let batched = verify_nav_batched(&dm, &g, alpha)?;
        let t_batched = start.elapsed().as_secs_f64();
        let same = naive.len() == batched.iter().map(Vec::len).sum::<usize>();
        for (alg, secs) in [("verify-naive", t_naive), ("verify-batched", t_batched)] {
            rows.push(BenchRow {
                instance: inst.clone(),
                algorithm: alg.into(),
                n,
                alpha,
                edges: g.edge_count(),
                maxdeg: g.max_out_degree(),
                queries: 0,
                seconds: secs,
                navigable: naive.is_empty(),
                detail: format!("agree={same} speedup={:.2}", t_naive / t_batched.max(1e-9)),
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_diskann_gap_rows() {
        let rows = diskann_gap(&[8]).unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(|r| r.navigable));
        let csv = to_csv(&rows);
        assert!(csv.starts_with(CSV_HEADER));
        assert_eq!(csv.lines().count(), 4);
    }

    #[test]
    fn small_query_lb_rows() {
        let rows = query_lb_demo(20, 3).unwrap();
        assert_eq!(rows.len(), 7);
        assert!(rows
            .iter()
            .filter(|r| r.algorithm == "reference")
            .all(|r| r.navigable));
        assert!(rows.last().unwrap().detail.starts_with("miss_fraction="));
    }
}
