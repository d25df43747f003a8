//! Instance generators: the binary-tree pointset, the set-cover gadget metric,
//! the perturbed path, and random baselines. Every generator is a pure
//! function of its parameters and seed.

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{input, Result};
use crate::graph::NavGraph;
use crate::metric::{Metric, PointSet, WeightedGraph};

pub use crate::setcover::SetCoverSpec;

/// Largest accepted bottom-vector shrink factor.
pub const MAX_SHRINK: f64 = 0.01;

fn log2_exact(n: usize) -> Result<u32> {
    if n >= 2 && n.is_power_of_two() {
        Ok(n.trailing_zeros())
    } else {
        Err(input(format!("n must be a power of two >= 2, got {n}")))
    }
}

/// Point index of interval `j` (0-based) at height `h`. Heights are stored
/// bottom first, so the `n` leaves come first and the root is last.
pub fn binary_tree_index(n: usize, h: u32, j: usize) -> usize {
    let offset: usize = (0..h).map(|g| n >> g).sum();
    offset + j
}

/// `2n - 1` vectors in dimension `n`, one per dyadic interval of `[n]`. The
/// vector of interval `j` at height `h` is `2^(-h/2)` on the interval's
/// coordinates and zero elsewhere; leaves are scaled by `1 - shrink`.
pub fn binary_tree_pointset(n: usize, shrink: f64) -> Result<PointSet> {
    let k = log2_exact(n)?;
    if !(0.0..=MAX_SHRINK).contains(&shrink) {
        return Err(input(format!(
            "shrink must lie in [0, {MAX_SHRINK}], got {shrink}"
        )));
    }
    let mut coords = Vec::with_capacity((2 * n - 1) * n);
    for h in 0..=k {
        let width = 1usize << h;
        let mut value = 2f64.powf(-(h as f64) / 2.0);
        if h == 0 {
            value *= 1.0 - shrink;
        }
        for j in 0..n / width {
            let mut row = vec![0.0; n];
            row[j * width..(j + 1) * width].fill(value);
            coords.extend(row);
        }
    }
    PointSet::new(n, coords)
}

/// Tree edges parent to child plus an edge from every node to each of its
/// ancestors. Max out-degree `log2 n + 1`.
pub fn binary_tree_reference_graph(n: usize) -> Result<NavGraph> {
    let k = log2_exact(n)?;
    let mut edges = Vec::new();
    for h in 0..=k {
        for j in 0..n >> h {
            let v = binary_tree_index(n, h, j);
            if h > 0 {
                edges.push((v, binary_tree_index(n, h - 1, 2 * j)));
                edges.push((v, binary_tree_index(n, h - 1, 2 * j + 1)));
            }
            for a in h + 1..=k {
                edges.push((v, binary_tree_index(n, a, j >> (a - h))));
            }
        }
    }
    NavGraph::from_edges(2 * n - 1, edges)
}

/// Point layout of the gadget metric: `L` roots, then `L` gadgets, each with
/// its `m` set vertices followed by its `n` element vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GadgetLayout {
    pub copies: usize,
    pub m: usize,
    pub n: usize,
}

impl GadgetLayout {
    pub fn new(spec: &SetCoverSpec, copies: usize) -> Self {
        Self {
            copies,
            m: spec.n_sets(),
            n: spec.n_elements(),
        }
    }

    pub fn n_points(&self) -> usize {
        self.copies * (self.m + self.n + 1)
    }

    pub fn root(&self, l: usize) -> usize {
        l
    }

    pub fn set(&self, q: usize, i: usize) -> usize {
        self.copies + q * (self.m + self.n) + i
    }

    pub fn element(&self, q: usize, j: usize) -> usize {
        self.copies + q * (self.m + self.n) + self.m + j
    }

    pub fn gadget(&self, q: usize) -> std::ops::Range<usize> {
        self.set(q, 0)..self.set(q, 0) + self.m + self.n
    }
}

/// Shortest-path metric of the gadget graph: root to set 1, set to set (same
/// gadget) `1 - gamma`, set to member element 1, root to element `2 - gamma`.
pub fn gadget_metric(spec: &SetCoverSpec, copies: usize, gamma: f64) -> Result<Metric> {
    let lay = GadgetLayout::new(spec, copies);
    if copies < lay.m + lay.n {
        return Err(input(format!(
            "L must be at least m + n = {}, got {copies}",
            lay.m + lay.n
        )));
    }
    if !(gamma > 0.0 && gamma < 0.5) {
        return Err(input(format!("gamma must lie in (0, 0.5), got {gamma}")));
    }
    spec.check_coverable()?;
    let mut wg = WeightedGraph::new(lay.n_points());
    for q in 0..copies {
        for l in 0..copies {
            for i in 0..lay.m {
                wg.add_edge(lay.root(l), lay.set(q, i), 1.0)?;
            }
            for j in 0..lay.n {
                wg.add_edge(lay.root(l), lay.element(q, j), 2.0 - gamma)?;
            }
        }
        for i in 0..lay.m {
            for i2 in i + 1..lay.m {
                wg.add_edge(lay.set(q, i), lay.set(q, i2), 1.0 - gamma)?;
            }
            for &j in spec.set(i) {
                wg.add_edge(lay.set(q, i), lay.element(q, j), 1.0)?;
            }
        }
    }
    wg.shortest_path_closure()
}

/// A sparse 1-navigable graph on [`gadget_metric`] built from a set cover:
/// each root links to the cover's set vertices in every gadget, each gadget is
/// a complete digraph, every gadget vertex links to the first root, and every
/// set vertex links to all roots.
///
/// The last rule is needed: a set vertex is at distance 1 from every root and
/// no other vertex is closer to a root than that, so the first root alone
/// cannot serve targets at the other roots. Root out-degree is exactly
/// `L * |cover|`.
pub fn gadget_reference_graph(
    spec: &SetCoverSpec,
    copies: usize,
    cover: &[usize],
) -> Result<NavGraph> {
    gadget_graph(spec, copies, cover, true)
}

pub(crate) fn gadget_graph(
    spec: &SetCoverSpec,
    copies: usize,
    cover: &[usize],
    sets_to_roots: bool,
) -> Result<NavGraph> {
    if cover.is_empty() {
        return Err(input("cover must not be empty"));
    }
    if cover.iter().any(|&i| i >= spec.n_sets()) || !spec.is_cover(cover) {
        return Err(input(format!("{cover:?} is not a set cover")));
    }
    let lay = GadgetLayout::new(spec, copies);
    let mut g = NavGraph::empty(lay.n_points());
    for q in 0..copies {
        for l in 0..copies {
            for &i in cover {
                g.add_edge(lay.root(l), lay.set(q, i));
            }
        }
        for s in lay.gadget(q) {
            for t in lay.gadget(q) {
                if s != t {
                    g.add_edge(s, t);
                }
            }
            g.add_edge(s, lay.root(0));
        }
        if sets_to_roots {
            for i in 0..lay.m {
                for l in 1..copies {
                    g.add_edge(lay.set(q, i), lay.root(l));
                }
            }
        }
    }
    Ok(g)
}

/// Set cover instance with a planted optimum: `k` sets partition the universe
/// into near-equal blocks, and the other `m - k` sets are random subsets of
/// size at most `small`. Set positions are shuffled.
pub fn planted_set_cover(
    n: usize,
    m: usize,
    k: usize,
    small: usize,
    seed: u64,
) -> Result<SetCoverSpec> {
    if k == 0 || k > m || k > n {
        return Err(input(format!("need 1 <= k <= min(n, m), got k = {k}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut elems: Vec<usize> = (0..n).collect();
    elems.shuffle(&mut rng);
    let mut sets: Vec<Vec<usize>> = (0..k)
        .map(|b| elems[b * n / k..(b + 1) * n / k].to_vec())
        .collect();
    for _ in k..m {
        let size = rng.random_range(1..=small.clamp(1, n));
        sets.push(sample(&mut rng, n, size).into_vec());
    }
    sets.shuffle(&mut rng);
    SetCoverSpec::new(n, sets)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PerturbedPathInstance {
    pub metric: Metric,
    pub hidden_pair: (usize, usize),
    pub seed: u64,
}

/// Path metric `1 + |i - j| / (n - 1)` with one pair, drawn uniformly from all
/// unordered pairs, overwritten to distance 1.
pub fn perturbed_path(n: usize, seed: u64) -> Result<PerturbedPathInstance> {
    if n < 3 {
        return Err(input(format!("perturbed path needs n >= 3, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = sample(&mut rng, n, 2);
    let (a, b) = (v.index(0), v.index(1));
    perturbed_path_with_pair(n, (a.min(b), a.max(b)), seed)
}

/// [`perturbed_path`] with an explicit hidden pair.
pub fn perturbed_path_with_pair(
    n: usize,
    pair: (usize, usize),
    seed: u64,
) -> Result<PerturbedPathInstance> {
    if n < 3 {
        return Err(input(format!("perturbed path needs n >= 3, got {n}")));
    }
    let (i, j) = (pair.0.min(pair.1), pair.0.max(pair.1));
    if i == j || j >= n {
        return Err(input(format!("invalid hidden pair {pair:?} for n = {n}")));
    }
    let scale = (n - 1) as f64;
    let metric = Metric::from_fn(n, |a, b| {
        if (a.min(b), a.max(b)) == (i, j) {
            1.0
        } else {
            1.0 + a.abs_diff(b) as f64 / scale
        }
    })?;
    Ok(PerturbedPathInstance {
        metric,
        hidden_pair: (i, j),
        seed,
    })
}

/// The path plus the hidden pair, both directions. Max out-degree 3.
pub fn perturbed_path_reference_graph(inst: &PerturbedPathInstance) -> Result<NavGraph> {
    let n = inst.metric.n();
    let (i, j) = inst.hidden_pair;
    let path = (0..n - 1).flat_map(|v| [(v, v + 1), (v + 1, v)]);
    NavGraph::from_edges(n, path.chain([(i, j), (j, i)]))
}

/// `n` points with i.i.d. standard normal coordinates.
pub fn random_euclidean(n: usize, dim: usize, seed: u64) -> Result<PointSet> {
    if dim == 0 {
        return Err(input("dim must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coords = (0..n * dim)
        .map(|_| rng.sample::<f64, _>(StandardNormal))
        .collect();
    PointSet::new(dim, coords)
}

/// All off-diagonal distances equal to 1.
pub fn uniform_metric(n: usize) -> Metric {
    Metric::uniform(n)
}
