use super::bitmatrix::{bool_matmul, BitMatrix};
use crate::error::{Error, Result};
use crate::graph::{check_alpha, NavGraph};
use crate::metric::DiscretizedMetric;

pub fn adjacency_matrix(g: &NavGraph) -> BitMatrix {
    let mut a = BitMatrix::zeros(g.n(), g.n());
    for (s, t) in g.edges() {
        a.set(s, t, true);
    }
    a
}

/// `B[v][t] = 1` iff `rounded(v, t) < (1+eps)^level / alpha`; the diagonal is
/// always set since `rounded(t, t) = 0`.
pub fn level_matrix(dm: &DiscretizedMetric, level: i32, alpha: f64) -> BitMatrix {
    let bound = dm.level_value(level) / alpha;
    BitMatrix::from_fn(dm.n(), dm.n(), |v, t| dm.rounded(v, t) < bound)
}

/// Uncovered targets of every source, computed with one Boolean product per
/// distance level: `(s, t)` at level `i` is covered iff `(A * B_i)[s][t] = 1`.
///
/// Agrees pair-for-pair with the direct check on the rounded metric.
pub fn verify_nav_batched(
    dm: &DiscretizedMetric,
    g: &NavGraph,
    alpha: f64,
) -> Result<Vec<Vec<usize>>> {
    check_alpha(alpha)?;
    let n = dm.n();
    if g.n() != n {
        return Err(Error::Dimension {
            expected: n,
            got: g.n(),
        });
    }
    let a = adjacency_matrix(g);
    let mut pairs_at: Vec<Vec<(usize, usize)>> = vec![Vec::new(); dm.num_levels()];
    for s in 0..n {
        for t in 0..n {
            if s != t {
                pairs_at[(dm.level(s, t) - dm.min_level()) as usize].push((s, t));
            }
        }
    }
    let mut uncovered = vec![Vec::new(); n];
    for (offset, pairs) in pairs_at.iter().enumerate() {
        if pairs.is_empty() {
            continue;
        }
        let level = dm.min_level() + offset as i32;
        let c = bool_matmul(&a, &level_matrix(dm, level, alpha))?;
        for &(s, t) in pairs {
            if !c.get(s, t) {
                uncovered[s].push(t);
            }
        }
    }
    for list in &mut uncovered {
        list.sort_unstable();
    }
    Ok(uncovered)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::verify_naive;
    use crate::metric::Metric;

    fn line(n: usize) -> Metric {
        Metric::from_fn(n, |i, j| 1.3f64.powi((j - i) as i32)).unwrap()
    }

    #[test]
    fn empty_graph_leaves_everything_uncovered() {
        let dm = line(6).discretize(0.1).unwrap();
        let u = verify_nav_batched(&dm, &NavGraph::empty(6), 1.0).unwrap();
        for (s, list) in u.iter().enumerate() {
            assert_eq!(list.len(), 5, "source {s}");
        }
    }

    #[test]
    fn complete_graph_covers_everything() {
        let dm = line(7).discretize(0.5).unwrap();
        let u = verify_nav_batched(&dm, &NavGraph::complete(7), 1.0).unwrap();
        assert!(u.iter().all(Vec::is_empty));
    }

    #[test]
    fn matches_direct_check_on_path_graph() {
        let m = line(8);
        let dm = m.discretize(0.1).unwrap();
        let g = NavGraph::from_edges(8, (0..7).flat_map(|i| [(i, i + 1), (i + 1, i)])).unwrap();
        for alpha in [1.0, 1.5, 2.0] {
            let batched = verify_nav_batched(&dm, &g, alpha).unwrap();
            let naive = verify_naive(&g, &dm.rounded_metric(), alpha).unwrap();
            let flat: Vec<_> = batched
                .iter()
                .enumerate()
                .flat_map(|(s, l)| l.iter().map(move |&t| (s, t)))
                .collect();
            let expect: Vec<_> = naive.iter().map(|v| (v.s, v.t)).collect();
            assert_eq!(flat, expect, "alpha = {alpha}");
        }
    }
}
