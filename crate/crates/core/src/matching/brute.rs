use alloc::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{Graph, Weight};

/// Largest vertex set [`pmm_bruteforce`] accepts.
pub const PMM_BRUTE_CEILING: usize = 18;

/// Weighted number of perfect matchings by exhaustive expansion.
pub fn pmm_bruteforce(g: &Graph) -> Result<Weight> {
    pmm_bruteforce_within(g, g.vertices(), PMM_BRUTE_CEILING)
}

/// Weighted number of perfect matchings of `g[verts]`.
pub fn pmm_bruteforce_within(g: &Graph, verts: VertexSet, ceiling: usize) -> Result<Weight> {
    if verts.len() > ceiling {
        return Err(Error::CeilingExceeded {
            routine: "pmm_bruteforce",
            size: verts.len(),
            ceiling,
        });
    }
    if verts.len() % 2 == 1 {
        return Ok(Weight::zero());
    }
    let mut memo = BTreeMap::new();
    Ok(expand(g, verts, &mut memo))
}

fn expand(g: &Graph, rest: VertexSet, memo: &mut BTreeMap<VertexSet, Weight>) -> Weight {
    let Some(v) = rest.first() else {
        return Weight::one();
    };
    if let Some(w) = memo.get(&rest) {
        return w.clone();
    }
    let mut total = Weight::zero();
    let mut others = rest;
    others.remove(v);
    for u in g.neighbors(v) & others {
        let mut sub = others;
        sub.remove(u);
        let inner = expand(g, sub, memo);
        if !inner.is_zero() {
            total += g.weight(v, u) * inner;
        }
    }
    memo.insert(rest, total.clone());
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle};

    #[test]
    fn small_counts() {
        assert_eq!(pmm_bruteforce(&cycle(4)).unwrap(), Weight::from_integer(2.into()));
        assert_eq!(pmm_bruteforce(&complete(4)).unwrap(), Weight::from_integer(3.into()));
        assert!(pmm_bruteforce(&complete(5)).unwrap().is_zero());
        assert_eq!(pmm_bruteforce(&Graph::empty(0)).unwrap(), Weight::one());
    }
}
