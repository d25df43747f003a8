//! Set cover solvers: the classic greedy algorithm over explicit set lists,
//! the sampling-based solver that only asks "is `x` in `S`", and an exhaustive
//! oracle for small instances.

mod alive;
mod brute;
mod fast;
mod greedy;

use std::cell::Cell;

use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};

pub use alive::AliveSet;
pub use brute::{
    brute_force_min_cover, brute_force_min_cover_sets, MAX_BRUTE_ELEMENTS, MAX_BRUTE_SETS,
};
pub use fast::{fast_set_cover, find_heavy_set, FastCover, HeavySetParams};
pub use greedy::greedy_cover;

/// Constant-time membership access to a set system with sets `0..m` over
/// elements `0..n`.
pub trait MembershipView {
    fn universe_size(&self) -> usize;
    fn family_size(&self) -> usize;
    fn contains(&self, set: usize, element: usize) -> bool;
}

/// Ordered list of chosen set indices.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Cover {
    pub sets: Vec<usize>,
}

impl Cover {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// True iff every element of the view's universe lies in a chosen set.
    pub fn covers(&self, view: &impl MembershipView) -> bool {
        (0..view.universe_size()).all(|x| self.sets.iter().any(|&s| view.contains(s, x)))
    }
}

/// Explicit set cover instance: `sets[i]` lists the elements of set `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetCoverSpec {
    n_elements: usize,
    sets: Vec<Vec<usize>>,
}

impl SetCoverSpec {
    pub fn new(n_elements: usize, mut sets: Vec<Vec<usize>>) -> Result<Self> {
        for (i, s) in sets.iter_mut().enumerate() {
            s.sort_unstable();
            s.dedup();
            if let Some(&x) = s.last().filter(|&&x| x >= n_elements) {
                return Err(input(format!(
                    "set {i} contains element {x} outside universe of size {n_elements}"
                )));
            }
        }
        Ok(Self { n_elements, sets })
    }

    pub fn n_elements(&self) -> usize {
        self.n_elements
    }

    pub fn n_sets(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn set(&self, i: usize) -> &[usize] {
        &self.sets[i]
    }

    /// Fails with the first element no set contains.
    pub fn check_coverable(&self) -> Result<()> {
        let mut hit = vec![false; self.n_elements];
        for s in &self.sets {
            for &x in s {
                hit[x] = true;
            }
        }
        match hit.iter().position(|h| !h) {
            Some(x) => Err(Error::NoCover(x)),
            None => Ok(()),
        }
    }

    pub fn is_cover(&self, chosen: &[usize]) -> bool {
        let mut hit = vec![false; self.n_elements];
        for &i in chosen {
            if let Some(s) = self.sets.get(i) {
                for &x in s {
                    hit[x] = true;
                }
            } else {
                return false;
            }
        }
        hit.into_iter().all(|h| h)
    }

    /// Bitset-backed membership view with a query counter.
    pub fn view(&self) -> ExplicitView {
        let words = self.n_elements.div_ceil(64).max(1);
        let mut bits = vec![0u64; words * self.sets.len()];
        for (i, s) in self.sets.iter().enumerate() {
            for &x in s {
                bits[i * words + x / 64] |= 1 << (x % 64);
            }
        }
        ExplicitView {
            n: self.n_elements,
            m: self.sets.len(),
            words,
            bits,
            queries: Cell::new(0),
        }
    }
}

/// Membership oracle over an explicit instance; counts every `contains` call.
#[derive(Debug, Clone)]
pub struct ExplicitView {
    n: usize,
    m: usize,
    words: usize,
    bits: Vec<u64>,
    queries: Cell<u64>,
}

impl ExplicitView {
    pub fn queries(&self) -> u64 {
        self.queries.get()
    }

    /// Exact `|S_set ∩ alive|`, without counting queries.
    pub fn intersection_size(&self, set: usize, alive: &AliveSet) -> usize {
        alive.iter().filter(|&x| self.bit(set, x)).count()
    }

    #[inline]
    fn bit(&self, set: usize, x: usize) -> bool {
        self.bits[set * self.words + x / 64] >> (x % 64) & 1 == 1
    }
}

impl MembershipView for ExplicitView {
    fn universe_size(&self) -> usize {
        self.n
    }

    fn family_size(&self) -> usize {
        self.m
    }

    #[inline]
    fn contains(&self, set: usize, element: usize) -> bool {
        self.queries.set(self.queries.get() + 1);
        self.bit(set, element)
    }
}
