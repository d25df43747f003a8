use super::{Cover, SetCoverSpec};
use crate::error::Result;

/// Repeatedly takes the set covering the most uncovered elements, lowest index
/// on ties. Size is at most `(ln n + 1)` times optimal.
pub fn greedy_cover(spec: &SetCoverSpec) -> Result<Cover> {
    spec.check_coverable()?;
    let mut covered = vec![false; spec.n_elements()];
    let mut remaining = spec.n_elements();
    let mut cover = Cover::default();
    while remaining > 0 {
        let (best, gain) = spec
            .sets()
            .iter()
            .enumerate()
            .map(|(i, s)| (i, s.iter().filter(|&&x| !covered[x]).count()))
            .fold((0, 0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        debug_assert!(gain > 0, "coverable instance always has a useful set");
        for &x in spec.set(best) {
            if !covered[x] {
                covered[x] = true;
                remaining -= 1;
            }
        }
        cover.sets.push(best);
    }
    debug_assert!(spec.is_cover(&cover.sets));
    Ok(cover)
}
