#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sparsenav::instances::random_euclidean;
use sparsenav::navbuild::BitMatrix;
use sparsenav::{Metric, NavGraph, WeightedGraph};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn euclidean(n: usize, dim: usize, seed: u64) -> Metric {
    Metric::from_points(&random_euclidean(n, dim, seed).unwrap()).unwrap()
}

/// Shortest-path closure of a complete graph with random weights in [1, 3).
/// Plenty of pairs end up with a distance set by a two-hop path.
pub fn random_graph_metric(n: usize, seed: u64) -> Metric {
    let mut r = rng(seed);
    let mut wg = WeightedGraph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            wg.add_edge(i, j, r.random_range(1.0..3.0)).unwrap();
        }
    }
    wg.shortest_path_closure().unwrap()
}

pub fn random_graph(n: usize, p: f64, seed: u64) -> NavGraph {
    let mut r = rng(seed);
    let mut g = NavGraph::empty(n);
    for s in 0..n {
        for t in 0..n {
            if s != t && r.random_bool(p) {
                g.add_edge(s, t);
            }
        }
    }
    g
}

pub fn random_bits(n: usize, p: f64, seed: u64) -> BitMatrix {
    let mut r = rng(seed);
    BitMatrix::from_fn(n, n, |_, _| r.random_bool(p))
}

/// Scalar triple loop.
pub fn naive_product(a: &BitMatrix, b: &BitMatrix) -> Vec<Vec<bool>> {
    (0..a.rows())
        .map(|s| {
            (0..b.cols())
                .map(|t| (0..a.cols()).any(|v| a.get(s, v) && b.get(v, t)))
                .collect()
        })
        .collect()
}

/// Harmonic number `H_k`.
pub fn harmonic(k: usize) -> f64 {
    (1..=k).map(|i| 1.0 / i as f64).sum()
}

/// Coefficient of determination of the least-squares line through `(x, y)`.
pub fn r_squared(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    sxy * sxy / (sxx * syy)
}
