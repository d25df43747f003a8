//! Finite metric spaces over `0..n`, their discretization onto powers of
//! `1 + eps`, and the shortest-path closure of weighted graphs.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{input, Error, Result};

/// Relative slack allowed when checking the triangle inequality.
pub const TRIANGLE_TOLERANCE: f64 = 1e-9;

/// Dense symmetric distance matrix over `n` points, stored row-major.
///
/// Off-diagonal entries are strictly positive: duplicate points are rejected
/// at construction so every ordered pair `(s, t)`, `s != t`, carries a
/// navigability constraint.
#[derive(Debug, Clone, PartialEq)]
pub struct Metric {
    n: usize,
    dist: Vec<f64>,
}

impl Metric {
    /// Builds a metric from a row-major `n * n` matrix, checking zero diagonal,
    /// symmetry, finiteness and positivity. The triangle inequality is not
    /// checked here; see [`Metric::check_triangle`].
    pub fn new(n: usize, dist: Vec<f64>) -> Result<Self> {
        if dist.len() != n * n {
            return Err(Error::Dimension {
                expected: n * n,
                got: dist.len(),
            });
        }
        for i in 0..n {
            if dist[i * n + i] != 0.0 {
                return Err(Error::NotAMetric(format!(
                    "nonzero diagonal entry d({i},{i}) = {}",
                    dist[i * n + i]
                )));
            }
            for j in (i + 1)..n {
                let a = dist[i * n + j];
                let b = dist[j * n + i];
                if !a.is_finite() || a < 0.0 {
                    return Err(Error::NotAMetric(format!("d({i},{j}) = {a}")));
                }
                if a != b {
                    return Err(Error::NotAMetric(format!(
                        "asymmetric: d({i},{j}) = {a} but d({j},{i}) = {b}"
                    )));
                }
                if a == 0.0 {
                    return Err(Error::Degenerate(i, j));
                }
            }
        }
        Ok(Self { n, dist })
    }

    /// Like [`Metric::new`] but also enforces the triangle inequality. Used for
    /// matrices read from untrusted sources.
    pub fn new_checked(n: usize, dist: Vec<f64>) -> Result<Self> {
        let m = Self::new(n, dist)?;
        m.check_triangle()?;
        Ok(m)
    }

    /// Builds a metric from a closure over ordered pairs `i < j`.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Result<Self> {
        let mut dist = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = f(i, j);
                dist[i * n + j] = d;
                dist[j * n + i] = d;
            }
        }
        Self::new(n, dist)
    }

    /// All off-diagonal distances equal to one.
    pub fn uniform(n: usize) -> Self {
        Self::from_fn(n, |_, _| 1.0).expect("uniform metric is valid")
    }

    /// Euclidean distances between the rows of a point set.
    pub fn from_points(ps: &PointSet) -> Result<Self> {
        if ps.n_points() < 2 {
            return Err(input("a metric needs at least two points"));
        }
        if let Some(pos) = ps.coords.iter().position(|c| !c.is_finite()) {
            return Err(input(format!(
                "non-finite coordinate at point {}, axis {}",
                pos / ps.dim,
                pos % ps.dim
            )));
        }
        Self::from_fn(ps.n_points(), |i, j| {
            ps.point(i)
                .iter()
                .zip(ps.point(j))
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt()
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.dist[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.dist
    }

    /// Returns the first triple violating `d(i,k) <= (d(i,j) + d(j,k)) * (1 + tol)`.
    pub fn check_triangle(&self) -> Result<()> {
        let n = self.n;
        for j in 0..n {
            let rj = self.row(j);
            for i in 0..n {
                let dij = self.d(i, j);
                let ri = self.row(i);
                for k in 0..n {
                    if ri[k] > (dij + rj[k]) * (1.0 + TRIANGLE_TOLERANCE) {
                        return Err(Error::NotAMetric(format!(
                            "triangle inequality fails: d({i},{k}) = {} > d({i},{j}) + d({j},{k}) = {}",
                            ri[k],
                            dij + rj[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn off_diagonal(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n).flat_map(move |i| ((i + 1)..self.n).map(move |j| (i, j, self.d(i, j))))
    }

    /// Ratio of the largest to the smallest off-diagonal distance.
    pub fn aspect_ratio(&self) -> Result<f64> {
        if self.n < 2 {
            return Err(input("aspect ratio needs at least two points"));
        }
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        for (i, j, d) in self.off_diagonal() {
            if d == 0.0 {
                return Err(Error::Degenerate(i, j));
            }
            lo = lo.min(d);
            hi = hi.max(d);
        }
        Ok(hi / lo)
    }

    /// Rounds every distance down to a power of `1 + eps`.
    pub fn discretize(&self, eps: f64) -> Result<DiscretizedMetric> {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(input(format!("eps must lie in (0, 1), got {eps}")));
        }
        let n = self.n;
        let base = 1.0 + eps;
        let mut level = vec![0i32; n * n];
        let mut rounded = vec![0.0; n * n];
        let (mut lo, mut hi) = (i32::MAX, i32::MIN);
        for (i, j, d) in self.off_diagonal() {
            if d == 0.0 {
                return Err(Error::Degenerate(i, j));
            }
            let k = floor_level(d, base);
            level[i * n + j] = k;
            level[j * n + i] = k;
            let r = base.powi(k);
            rounded[i * n + j] = r;
            rounded[j * n + i] = r;
            lo = lo.min(k);
            hi = hi.max(k);
        }
        let num_levels = if n < 2 { 0 } else { (hi - lo + 1) as usize };
        Ok(DiscretizedMetric {
            base: self.clone(),
            eps,
            level,
            rounded,
            min_level: if n < 2 { 0 } else { lo },
            num_levels,
        })
    }
}

/// `floor(log_base d)`, corrected so that `base^k <= d < base^(k+1)` holds for
/// the floating-point powers actually used downstream.
pub(crate) fn floor_level(d: f64, base: f64) -> i32 {
    let mut k = (d.ln() / base.ln()).floor() as i32;
    while base.powi(k + 1) <= d {
        k += 1;
    }
    while base.powi(k) > d {
        k -= 1;
    }
    k
}

/// `n` points in `dim`-dimensional real space, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    dim: usize,
    coords: Vec<f64>,
}

impl PointSet {
    pub fn new(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(input("point dimension must be positive"));
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(input(format!(
                "{} coordinates do not split into rows of length {dim}",
                coords.len()
            )));
        }
        if let Some(pos) = coords.iter().position(|c| !c.is_finite()) {
            return Err(input(format!("non-finite coordinate at position {pos}")));
        }
        Ok(Self { dim, coords })
    }

    pub fn n_points(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }
}

/// A metric whose distances have been rounded down to integer powers of
/// `1 + eps`.
#[derive(Debug, Clone)]
pub struct DiscretizedMetric {
    base: Metric,
    eps: f64,
    level: Vec<i32>,
    rounded: Vec<f64>,
    min_level: i32,
    num_levels: usize,
}

impl DiscretizedMetric {
    pub fn base(&self) -> &Metric {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.base.n
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Level `k` with `(1+eps)^k <= d(s,t) < (1+eps)^(k+1)`. Meaningless on the diagonal.
    #[inline]
    pub fn level(&self, s: usize, t: usize) -> i32 {
        self.level[s * self.n() + t]
    }

    /// Rounded distance `(1+eps)^level(s,t)`, zero on the diagonal.
    #[inline]
    pub fn rounded(&self, s: usize, t: usize) -> f64 {
        self.rounded[s * self.n() + t]
    }

    /// The rounded value of level `k`, computed exactly as for stored entries.
    #[inline]
    pub fn level_value(&self, k: i32) -> f64 {
        (1.0 + self.eps).powi(k)
    }

    pub fn min_level(&self) -> i32 {
        self.min_level
    }

    pub fn num_levels(&self) -> usize {
        self.num_levels
    }

    /// Levels that occur on at least one off-diagonal pair, ascending.
    pub fn levels_present(&self) -> Vec<i32> {
        let mut seen = vec![false; self.num_levels];
        let n = self.n();
        for s in 0..n {
            for t in 0..n {
                if s != t {
                    seen[(self.level(s, t) - self.min_level) as usize] = true;
                }
            }
        }
        seen.iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| self.min_level + i as i32)
            .collect()
    }

    /// The rounded distances as a plain matrix. Rounding down can break the
    /// triangle inequality, so the result is only checked for symmetry and
    /// positivity.
    pub fn rounded_metric(&self) -> Metric {
        Metric::new(self.n(), self.rounded.clone()).expect("rounded distances stay positive")
    }
}

/// Undirected graph with positive edge weights.
#[derive(Debug, Clone, Default)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
}

impl WeightedGraph {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
        }
    }

    pub fn add_edge(&mut self, a: usize, b: usize, w: f64) -> Result<()> {
        if a >= self.n || b >= self.n {
            return Err(input(format!(
                "edge ({a},{b}) out of range for {} vertices",
                self.n
            )));
        }
        if a == b {
            return Err(input(format!("self-loop at {a}")));
        }
        if !(w > 0.0 && w.is_finite()) {
            return Err(input(format!("edge ({a},{b}) has non-positive weight {w}")));
        }
        self.edges.push((a, b, w));
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    /// All-pairs shortest-path distances (Floyd-Warshall).
    pub fn shortest_path_closure(&self) -> Result<Metric> {
        let n = self.n;
        let mut d = vec![f64::INFINITY; n * n];
        for i in 0..n {
            d[i * n + i] = 0.0;
        }
        for &(a, b, w) in &self.edges {
            if w < d[a * n + b] {
                d[a * n + b] = w;
                d[b * n + a] = w;
            }
        }
        for k in 0..n {
            let rk: Vec<f64> = d[k * n..(k + 1) * n].to_vec();
            for i in 0..n {
                let dik = d[i * n + k];
                if dik.is_infinite() {
                    continue;
                }
                let ri = &mut d[i * n..(i + 1) * n];
                for (dij, &dkj) in ri.iter_mut().zip(&rk) {
                    let via = dik + dkj;
                    if via < *dij {
                        *dij = via;
                    }
                }
            }
        }
        if let Some(pos) = d.iter().position(|x| x.is_infinite()) {
            return Err(Error::Disconnected(pos / n, pos % n));
        }
        Metric::new(n, d)
    }
}

/// Read access to a metric that tallies every distance lookup, optionally
/// refusing lookups past a fixed budget.
#[derive(Debug)]
pub struct CountingMetric<'a> {
    metric: &'a Metric,
    queries: AtomicU64,
    budget: Option<u64>,
}

impl<'a> CountingMetric<'a> {
    pub fn new(metric: &'a Metric) -> Self {
        Self {
            metric,
            queries: AtomicU64::new(0),
            budget: None,
        }
    }

    pub fn with_budget(metric: &'a Metric, budget: u64) -> Self {
        Self {
            budget: Some(budget),
            ..Self::new(metric)
        }
    }

    pub fn n(&self) -> usize {
        self.metric.n()
    }

    pub fn inner(&self) -> &'a Metric {
        self.metric
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.queries.fetch_add(1, Ordering::Relaxed);
        self.metric.d(i, j)
    }

    /// Budget-aware lookup; fails once the budget is spent.
    pub fn try_d(&self, i: usize, j: usize) -> Result<f64> {
        let used = self.queries.fetch_add(1, Ordering::Relaxed);
        match self.budget {
            Some(b) if used >= b => {
                self.queries.fetch_sub(1, Ordering::Relaxed);
                Err(Error::BudgetExhausted(b))
            }
            _ => Ok(self.metric.d(i, j)),
        }
    }

    pub fn queries(&self) -> u64 {
        self.queries.load(Ordering::Relaxed)
    }

    pub fn budget(&self) -> Option<u64> {
        self.budget
    }
}
