use alloc::vec::Vec;

use crate::bitset::{VertexSet, MAX_VERTICES};
use crate::error::{Error, Result};
use crate::graph::subsets_up_to;

/// Above this many constraint pairs the greedy cover is replaced by the
/// plain family of all small sets (or all co-small sets).
const GREEDY_PAIR_LIMIT: usize = 250_000;

/// Sets over `0..universe_size` such that every disjoint pair `(A, B)`
/// with `|A| <= a` and `|B| <= b` is split by some member `R`:
/// `A ⊆ R` and `B ∩ R = ∅`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitterFamily {
    pub universe_size: usize,
    pub a: usize,
    pub b: usize,
    pub sets: Vec<VertexSet>,
}

impl SplitterFamily {
    /// Exhaustive check of the covering property.
    pub fn verify(&self) -> bool {
        let u = VertexSet::full(self.universe_size);
        subsets_up_to(u, self.a).into_iter().all(|a| {
            subsets_up_to(u - a, self.b)
                .into_iter()
                .all(|b| self.sets.iter().any(|r| a.is_subset(r) && !b.intersects(r)))
        })
    }
}

fn masks_up_to(u: usize, k: usize) -> Vec<u64> {
    let full = if u == 64 { u64::MAX } else { (1u64 << u) - 1 };
    subsets_up_to(VertexSet::full(u), k)
        .into_iter()
        .map(|s| s.iter().fold(0u64, |m, v| m | 1 << v) & full)
        .collect()
}

/// Deterministic splitter family.
///
/// Only the maximal constraint pairs need covering. While some remain, the
/// first uncovered pair seeds a new set, and every free element is put on
/// the side that keeps more uncovered pairs splittable. When the pairs are
/// too many to list, all sets of size at most `a` (or the complements of
/// all sets of size at most `b`, whichever family is smaller) are used.
pub fn splitter_family(universe_size: usize, a: usize, b: usize) -> Result<SplitterFamily> {
    if universe_size > MAX_VERTICES {
        return Err(Error::TooManyVertices {
            n: universe_size,
            max: MAX_VERTICES,
        });
    }
    let u = universe_size;
    let full = VertexSet::full(u);
    let (a, b) = (a.min(u), b.min(u));
    let make = |sets| SplitterFamily {
        universe_size: u,
        a,
        b,
        sets,
    };
    if a == 0 {
        return Ok(make(alloc::vec![VertexSet::new()]));
    }
    if b == 0 {
        return Ok(make(alloc::vec![full]));
    }
    let pair_estimate = binomial(u, a).saturating_mul(binomial(u - a, b.min(u - a)));
    if u > 64 || pair_estimate > GREEDY_PAIR_LIMIT {
        let small = subsets_up_to(full, a);
        let co_small = subsets_up_to(full, b);
        let sets = if small.len() <= co_small.len() {
            small
        } else {
            co_small.into_iter().map(|s| full - s).collect()
        };
        return Ok(make(sets));
    }

    let mut pairs: Vec<(u64, u64)> = Vec::new();
    for am in masks_up_to(u, a) {
        for bm in masks_up_to(u, b) {
            if am & bm != 0 {
                continue;
            }
            let (sa, sb) = (am.count_ones() as usize, bm.count_ones() as usize);
            let saturated = sa + sb == u;
            if (sa == a || saturated) && (sb == b || saturated) {
                pairs.push((am, bm));
            }
        }
    }
    let mut sets = Vec::new();
    while let Some(&(seed_a, seed_b)) = pairs.first() {
        let (mut inside, mut outside) = (seed_a, seed_b);
        for v in 0..u {
            let bit = 1u64 << v;
            if (inside | outside) & bit != 0 {
                continue;
            }
            let fits = |i: u64, o: u64| pairs.iter().filter(|&&(pa, pb)| pa & o == 0 && pb & i == 0).count();
            if fits(inside | bit, outside) >= fits(inside, outside | bit) {
                inside |= bit;
            } else {
                outside |= bit;
            }
        }
        pairs.retain(|&(pa, pb)| !(pa & !inside == 0 && pb & inside == 0));
        sets.push((0..u).filter(|&i| inside >> i & 1 == 1).collect());
    }
    Ok(make(sets))
}

fn binomial(n: usize, k: usize) -> usize {
    let mut r: usize = 1;
    for i in 0..k.min(n) {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_cases() {
        assert_eq!(splitter_family(5, 0, 3).unwrap().sets, alloc::vec![VertexSet::new()]);
        assert_eq!(splitter_family(5, 2, 0).unwrap().sets, alloc::vec![VertexSet::full(5)]);
    }

    #[test]
    fn singleton_pairs_over_eight() {
        let f = splitter_family(8, 1, 1).unwrap();
        assert!(f.verify());
        assert!(f.sets.len() <= 8, "{}", f.sets.len());
    }
}
