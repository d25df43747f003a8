use super::SetCoverSpec;
use crate::error::{Error, Result};

pub const MAX_BRUTE_ELEMENTS: usize = 24;
pub const MAX_BRUTE_SETS: usize = 24;

/// Exact minimum cover size by enumerating subfamilies in increasing size.
pub fn brute_force_min_cover(spec: &SetCoverSpec) -> Result<usize> {
    brute_force_min_cover_sets(spec).map(|c| c.len())
}

/// A minimum cover (lexicographically first among those of minimum size in
/// mask order).
pub fn brute_force_min_cover_sets(spec: &SetCoverSpec) -> Result<Vec<usize>> {
    let n = spec.n_elements();
    let m = spec.n_sets();
    if n > MAX_BRUTE_ELEMENTS || m > MAX_BRUTE_SETS {
        return Err(Error::TooLarge(format!(
            "{n} elements and {m} sets (limit {MAX_BRUTE_ELEMENTS} each)"
        )));
    }
    spec.check_coverable()?;
    let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
    if full == 0 {
        return Ok(Vec::new());
    }
    let masks: Vec<u32> = spec
        .sets()
        .iter()
        .map(|s| s.iter().fold(0u32, |acc, &x| acc | 1 << x))
        .collect();
    for k in 1..=m {
        // Gosper's hack over all m-bit words with k bits set.
        let mut choice: u64 = (1u64 << k) - 1;
        let limit = 1u64 << m;
        while choice < limit {
            let mut union = 0u32;
            let mut bits = choice;
            while bits != 0 {
                union |= masks[bits.trailing_zeros() as usize];
                bits &= bits - 1;
            }
            if union == full {
                return Ok((0..m).filter(|&i| choice >> i & 1 == 1).collect());
            }
            let c = choice & choice.wrapping_neg();
            let r = choice + c;
            choice = (((r ^ choice) >> 2) / c) | r;
        }
    }
    unreachable!("coverable instance has a cover using every set")
}
