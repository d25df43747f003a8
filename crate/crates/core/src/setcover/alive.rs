use rand::Rng;

use crate::error::{Error, Result};

/// Subset of `0..n` supporting deletion and uniform sampling in `O(log n)`.
///
/// Backed by a complete binary tree over `2^ceil(log2 n)` leaves laid out as
/// an implicit heap (node `v` has children `2v` and `2v + 1`, leaves start at
/// `width`). Each node stores how many alive leaves sit below it.
#[derive(Debug, Clone)]
pub struct AliveSet {
    n: usize,
    width: usize,
    counts: Vec<u32>,
}

impl AliveSet {
    /// All of `0..n` alive.
    pub fn new(n: usize) -> Self {
        Self::from_members(n, 0..n)
    }

    /// Only the given members of `0..n` alive. Members must be distinct and in range.
    pub fn from_members(n: usize, members: impl IntoIterator<Item = usize>) -> Self {
        let width = n.max(1).next_power_of_two();
        let mut counts = vec![0u32; 2 * width];
        for x in members {
            assert!(x < n, "member {x} out of range for universe of {n}");
            assert!(counts[width + x] == 0, "duplicate member {x}");
            counts[width + x] = 1;
        }
        for v in (1..width).rev() {
            counts[v] = counts[2 * v] + counts[2 * v + 1];
        }
        Self { n, width, counts }
    }

    pub fn universe_size(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.counts[1] as usize
    }

    pub fn is_empty(&self) -> bool {
        self.counts[1] == 0
    }

    pub fn contains(&self, x: usize) -> bool {
        x < self.n && self.counts[self.width + x] == 1
    }

    /// Removes `x`; returns false (and changes nothing) if `x` was not alive.
    pub fn delete(&mut self, x: usize) -> bool {
        if !self.contains(x) {
            return false;
        }
        let mut v = self.width + x;
        while v >= 1 {
            self.counts[v] -= 1;
            v /= 2;
        }
        debug_assert!(self.path_consistent(self.width + x));
        true
    }

    /// Uniformly random alive element.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<usize> {
        if self.is_empty() {
            return Err(Error::EmptySample);
        }
        let mut v = 1;
        while v < self.width {
            let left = self.counts[2 * v];
            // Descend left with probability c_left / c_v.
            v = if rng.random_range(0..self.counts[v]) < left {
                2 * v
            } else {
                2 * v + 1
            };
        }
        Ok(v - self.width)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&x| self.counts[self.width + x] == 1)
    }

    pub fn root_count(&self) -> u32 {
        self.counts[1]
    }

    fn path_consistent(&self, leaf: usize) -> bool {
        let mut v = leaf / 2;
        while v >= 1 {
            if self.counts[v] != self.counts[2 * v] + self.counts[2 * v + 1] {
                return false;
            }
            v /= 2;
        }
        true
    }

    /// Checks `c_v = c_left + c_right` at every internal node and that leaves
    /// beyond the universe are dead.
    pub fn check_invariants(&self) -> bool {
        (1..self.width).all(|v| self.counts[v] == self.counts[2 * v] + self.counts[2 * v + 1])
            && (self.n..self.width).all(|x| self.counts[self.width + x] == 0)
            && self.counts[self.width..].iter().all(|&c| c <= 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sampling_respects_deletions() {
        let mut a = AliveSet::new(4);
        assert!(a.delete(0));
        assert!(a.delete(2));
        assert!(!a.delete(2));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..1000 {
            let x = a.sample(&mut rng).unwrap();
            assert!(x == 1 || x == 3);
        }
        assert!(a.check_invariants());
    }

    #[test]
    fn delete_everything() {
        let mut a = AliveSet::new(5);
        for x in 0..5 {
            assert!(a.delete(x));
        }
        assert!(a.is_empty());
        assert_eq!(a.root_count(), 0);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(a.sample(&mut rng), Err(Error::EmptySample));
    }

    #[test]
    fn out_of_range_delete_is_noop() {
        let mut a = AliveSet::new(3);
        assert!(!a.delete(3));
        assert!(!a.delete(100));
        assert_eq!(a.len(), 3);
    }

    #[test]
    fn from_members_and_iter() {
        let a = AliveSet::from_members(10, [7, 2, 9]);
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![2, 7, 9]);
        assert_eq!(a.len(), 3);
        assert!(a.check_invariants());
        let e = AliveSet::new(0);
        assert!(e.is_empty());
    }
}
