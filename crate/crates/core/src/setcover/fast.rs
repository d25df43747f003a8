//! Greedy set cover simulated through random sampling, touching the instance
//! only via membership queries.

use std::cell::Cell;

use rand::Rng;

use super::{AliveSet, Cover, MembershipView};
use crate::error::{Error, Result};

/// Sampling sizes and acceptance threshold for one round of the heavy-set
/// search. All logarithms are natural; `n` and `m*n` are clamped to at least 2
/// so single-element universes still get a usable threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeavySetParams {
    pub rounds: usize,
    pub threshold: f64,
    ln_n: f64,
    ln_mn: f64,
    m: usize,
    khat: usize,
}

impl HeavySetParams {
    pub fn new(m: usize, n: usize, khat: usize) -> Self {
        let ln_n = (n.max(2) as f64).ln();
        let ln_mn = ((m * n).max(2) as f64).ln();
        // At least one round even for khat = 1, where ceil(log2 khat) = 0.
        let rounds = (usize::BITS - (khat.max(1) - 1).leading_zeros()).max(1) as usize;
        Self {
            rounds,
            threshold: 24.0 * ln_mn,
            ln_n,
            ln_mn,
            m,
            khat,
        }
    }

    /// Number of sets sampled in round `i` (1-based).
    pub fn sets_in_round(&self, i: usize) -> usize {
        let r = self.m as f64 * self.ln_n * 2f64.powi(2 - i as i32);
        (r.ceil() as usize).max(1)
    }

    /// Number of alive elements sampled in round `i` (1-based).
    pub fn elements_in_round(&self, i: usize) -> usize {
        let cap = (2f64.powi(i as i32 + 3) * self.ln_n).min(2.0 * self.khat as f64);
        ((48.0 * self.ln_mn * cap).ceil() as usize).max(1)
    }
}

/// One simulated greedy step: looks for a set holding at least a
/// `1/(8 khat)` fraction of the alive elements. `None` signals FAIL.
pub fn find_heavy_set<V, R>(
    alive: &AliveSet,
    view: &V,
    khat: usize,
    n: usize,
    rng: &mut R,
) -> Option<usize>
where
    V: MembershipView + ?Sized,
    R: Rng + ?Sized,
{
    let m = view.family_size();
    if m == 0 || alive.is_empty() {
        return None;
    }
    let params = HeavySetParams::new(m, n, khat);
    let mut sample = Vec::new();
    for i in 1..=params.rounds {
        let r = params.sets_in_round(i);
        let t = params.elements_in_round(i);
        let sets: Vec<usize> = (0..r).map(|_| rng.random_range(0..m)).collect();
        sample.clear();
        sample.extend((0..t).map(|_| alive.sample(rng).expect("alive set is nonempty")));
        for &set in &sets {
            let mut hits = 0usize;
            for (seen, &x) in sample.iter().enumerate() {
                if view.contains(set, x) {
                    hits += 1;
                    if hits as f64 >= params.threshold {
                        return Some(set);
                    }
                } else if ((hits + t - seen - 1) as f64) < params.threshold {
                    // Cannot reach the threshold any more.
                    break;
                }
            }
            if hits as f64 >= params.threshold {
                return Some(set);
            }
        }
    }
    None
}

/// Result of [`fast_set_cover`].
#[derive(Debug, Clone, PartialEq)]
pub struct FastCover {
    pub cover: Cover,
    /// Membership queries issued, including those spent deleting covered elements.
    pub queries: u64,
    /// Final value of the optimum-size guess.
    pub khat: usize,
    pub failed_searches: usize,
}

struct Counted<'a, V: ?Sized> {
    view: &'a V,
    queries: Cell<u64>,
}

impl<V: MembershipView + ?Sized> MembershipView for Counted<'_, V> {
    fn universe_size(&self) -> usize {
        self.view.universe_size()
    }

    fn family_size(&self) -> usize {
        self.view.family_size()
    }

    #[inline]
    fn contains(&self, set: usize, element: usize) -> bool {
        self.queries.set(self.queries.get() + 1);
        self.view.contains(set, element)
    }
}

/// `O(k ln n)`-approximate set cover using `~O(mk + nk)` membership queries,
/// where `k` is the optimum. Starts with the guess `khat = 1` and doubles it
/// whenever the heavy-set search fails.
pub fn fast_set_cover<V, R>(view: &V, rng: &mut R) -> Result<FastCover>
where
    V: MembershipView + ?Sized,
    R: Rng + ?Sized,
{
    let n = view.universe_size();
    let m = view.family_size();
    let counted = Counted {
        view,
        queries: Cell::new(0),
    };
    let mut alive = AliveSet::new(n);
    let mut cover = Cover::default();
    let mut khat = 1usize;
    let mut failed = 0usize;
    let limit = 4 * m;
    while !alive.is_empty() {
        if khat > limit {
            return Err(Error::LikelyUncoverable {
                khat,
                limit,
                alive: alive.len(),
            });
        }
        let Some(set) = find_heavy_set(&alive, &counted, khat, n, rng) else {
            failed += 1;
            khat *= 2;
            continue;
        };
        cover.sets.push(set);
        let members: Vec<usize> = alive.iter().filter(|&x| counted.contains(set, x)).collect();
        for x in members {
            alive.delete(x);
        }
    }
    Ok(FastCover {
        cover,
        queries: counted.queries.get(),
        khat,
        failed_searches: failed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setcover::SetCoverSpec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rounds_follow_ceil_log2() {
        let rounds = |k| HeavySetParams::new(10, 10, k).rounds;
        assert_eq!(rounds(1), 1);
        assert_eq!(rounds(2), 1);
        assert_eq!(rounds(3), 2);
        assert_eq!(rounds(4), 2);
        assert_eq!(rounds(5), 3);
        assert_eq!(rounds(16), 4);
        assert_eq!(rounds(17), 5);
    }

    #[test]
    fn sample_sizes() {
        let p = HeavySetParams::new(200, 200, 8);
        let ln_n = 200f64.ln();
        let ln_mn = 40000f64.ln();
        assert_eq!(p.sets_in_round(1), (200.0 * ln_n * 2.0).ceil() as usize);
        assert_eq!(p.sets_in_round(3), (200.0 * ln_n * 0.5).ceil() as usize);
        assert_eq!(
            p.elements_in_round(1),
            (48.0 * ln_mn * 16.0).ceil() as usize
        );
        assert!((p.threshold - 24.0 * ln_mn).abs() < 1e-12);
    }

    #[test]
    fn universal_set_is_found_immediately() {
        let spec = SetCoverSpec::new(30, vec![(0..30).collect()]).unwrap();
        let view = spec.view();
        let alive = AliveSet::new(30);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert_eq!(find_heavy_set(&alive, &view, 1, 30, &mut rng), Some(0));
        let fc = fast_set_cover(&view, &mut rng).unwrap();
        assert_eq!(fc.cover.sets, vec![0]);
        assert_eq!(fc.failed_searches, 0);
    }

    #[test]
    fn single_element_universe() {
        let spec = SetCoverSpec::new(1, vec![vec![], vec![0], vec![]]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let fc = fast_set_cover(&spec.view(), &mut rng).unwrap();
        assert_eq!(fc.cover.sets, vec![1]);
    }

    #[test]
    fn uncoverable_hits_safety_valve() {
        let spec = SetCoverSpec::new(4, vec![vec![0], vec![1]]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let err = fast_set_cover(&spec.view(), &mut rng).unwrap_err();
        assert!(matches!(err, Error::LikelyUncoverable { limit: 8, .. }));
    }

    #[test]
    fn query_count_is_reported() {
        let spec =
            SetCoverSpec::new(5, vec![vec![0, 1, 2], vec![3, 4], vec![2, 3], vec![4]]).unwrap();
        let view = spec.view();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let fc = fast_set_cover(&view, &mut rng).unwrap();
        assert!(spec.is_cover(&fc.cover.sets));
        assert_eq!(fc.queries, view.queries());
    }
}
