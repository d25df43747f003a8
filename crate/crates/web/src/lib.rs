//! Browser bindings. Each export returns a JSON string so the page needs no
//! generated type glue; the plain functions underneath are testable natively.

use serde::Serialize;
use sparsenav::instances::{
    binary_tree_pointset, binary_tree_reference_graph, perturbed_path, random_euclidean,
};
use sparsenav::navbuild::{budget_probe, slow_diskann};
use sparsenav::{build, is_navigable, Algorithm, BuildReport, CountingMetric, Metric};
use wasm_bindgen::prelude::*;

#[derive(Serialize)]
pub struct GraphView {
    pub points: Vec<[f64; 2]>,
    pub edges: Vec<[usize; 2]>,
    pub navigable: bool,
    pub report: BuildReport,
}

/// Random planar points and a navigable graph on them.
pub fn random_graph(n: usize, alpha: f64, algorithm: &str, seed: u64) -> Result<GraphView, String> {
    if !(2..=400).contains(&n) {
        return Err(format!("n must be between 2 and 400, got {n}"));
    }
    let alg: Algorithm = algorithm
        .parse()
        .map_err(|e: sparsenav::Error| e.to_string())?;
    let ps = random_euclidean(n, 2, seed).map_err(|e| e.to_string())?;
    let m = Metric::from_points(&ps).map_err(|e| e.to_string())?;
    let (g, report) = build(alg, &m, alpha, Some(0.1), Some(seed)).map_err(|e| e.to_string())?;
    Ok(GraphView {
        points: (0..n).map(|i| [ps.point(i)[0], ps.point(i)[1]]).collect(),
        edges: g.edges().map(|(s, t)| [s, t]).collect(),
        navigable: is_navigable(&g, &m, alpha).map_err(|e| e.to_string())?,
        report,
    })
}

#[derive(Serialize)]
pub struct GapRow {
    pub n: usize,
    pub diskann_edges: usize,
    pub diskann_maxdeg: usize,
    pub reference_edges: usize,
    pub reference_maxdeg: usize,
}

/// Slow DiskANN against the tree reference graph on binary-tree pointsets.
pub fn diskann_gap(max_n: usize) -> Result<Vec<GapRow>, String> {
    let mut rows = Vec::new();
    let mut n = 4;
    while n <= max_n.min(128) {
        let m = Metric::from_points(&binary_tree_pointset(n, 1e-4).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let d = slow_diskann(&CountingMetric::new(&m), 1.0).map_err(|e| e.to_string())?;
        let h = binary_tree_reference_graph(n).map_err(|e| e.to_string())?;
        rows.push(GapRow {
            n,
            diskann_edges: d.edge_count(),
            diskann_maxdeg: d.max_out_degree(),
            reference_edges: h.edge_count(),
            reference_maxdeg: h.max_out_degree(),
        });
        n *= 2;
    }
    Ok(rows)
}

#[derive(Serialize)]
pub struct QueryLb {
    pub n: usize,
    pub budget: u64,
    pub seeds: u64,
    pub misses: u64,
    pub miss_fraction: f64,
}

/// How often a budget-capped builder misses the hidden shortcut of a
/// perturbed path.
pub fn query_lb(n: usize, budget: u64, seeds: u64) -> Result<QueryLb, String> {
    if !(3..=1000).contains(&n) || seeds == 0 {
        return Err("need 3 <= n <= 1000 and at least one seed".into());
    }
    let mut misses = 0;
    for seed in 0..seeds {
        let inst = perturbed_path(n, seed).map_err(|e| e.to_string())?;
        let out = budget_probe(&inst.metric, budget, seed).map_err(|e| e.to_string())?;
        if !is_navigable(&out.graph, &inst.metric, 1.0).map_err(|e| e.to_string())? {
            misses += 1;
        }
    }
    Ok(QueryLb {
        n,
        budget,
        seeds,
        misses,
        miss_fraction: misses as f64 / seeds as f64,
    })
}

fn to_js<T: Serialize>(r: Result<T, String>) -> Result<String, JsError> {
    r.map(|v| serde_json::to_string(&v).expect("serializable"))
        .map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = randomGraph)]
pub fn random_graph_js(
    n: usize,
    alpha: f64,
    algorithm: &str,
    seed: u64,
) -> Result<String, JsError> {
    to_js(random_graph(n, alpha, algorithm, seed))
}

#[wasm_bindgen(js_name = diskannGap)]
pub fn diskann_gap_js(max_n: usize) -> Result<String, JsError> {
    to_js(diskann_gap(max_n))
}

#[wasm_bindgen(js_name = queryLowerBound)]
pub fn query_lb_js(n: usize, budget: u64, seeds: u64) -> Result<String, JsError> {
    to_js(query_lb(n, budget, seeds))
}
