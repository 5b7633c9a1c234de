//! Small exhaustive solvers shared by the class sub-solvers and the tests.

use alloc::vec::Vec;

use crate::bitset::VertexSet;
use crate::graph::{components_within, Graph};
use crate::planarity::coloring::color_with;

/// Maximum independent set of `g[verts]` by branch and bound.
pub fn max_independent_set(adj: &[VertexSet], verts: VertexSet) -> VertexSet {
    fn go(adj: &[VertexSet], cand: VertexSet) -> VertexSet {
        if cand.is_empty() {
            return VertexSet::new();
        }
        let comps = components_within(adj, cand);
        if comps.len() > 1 {
            return comps.into_iter().fold(VertexSet::new(), |a, c| a | go(adj, c));
        }
        let deg = |v: usize| (adj[v] & cand).len();
        let low = cand.iter().min_by_key(|&v| deg(v)).unwrap();
        if deg(low) <= 1 {
            let mut rest = cand - adj[low];
            rest.remove(low);
            let mut s = go(adj, rest);
            s.insert(low);
            return s;
        }
        let v = cand.iter().max_by_key(|&v| (deg(v), core::cmp::Reverse(v))).unwrap();
        let mut take_rest = cand - adj[v];
        take_rest.remove(v);
        let mut with = go(adj, take_rest);
        with.insert(v);
        let mut without_rest = cand;
        without_rest.remove(v);
        // the branch without v can only win with more than |with| vertices
        if without_rest.len() <= with.len() {
            return with;
        }
        let without = go(adj, without_rest);
        if without.len() > with.len() {
            without
        } else {
            with
        }
    }
    go(adj, verts)
}

/// Independence number by exhaustive subset enumeration (test oracle).
pub fn independence_number_bruteforce(g: &Graph) -> usize {
    let n = g.n();
    assert!(n <= 24, "exhaustive independence search is capped at 24 vertices");
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, u| m | 1 << u))
        .collect();
    let mut best = 0;
    for mask in 0u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let mut m = mask;
        let mut ok = true;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            if adj[v] & mask != 0 {
                ok = false;
                break;
            }
            m &= m - 1;
        }
        if ok {
            best = size;
        }
    }
    best
}

/// Optimal coloring of `g[verts]`; colors of vertices outside are 0.
pub fn chromatic_coloring(adj: &[VertexSet], verts: VertexSet) -> Vec<usize> {
    if verts.is_empty() {
        return alloc::vec![0; adj.len()];
    }
    for k in 1..=verts.len() {
        let mut budget = u64::MAX;
        if let Some(c) = color_with(adj, verts, k, &mut budget) {
            return c;
        }
    }
    unreachable!("n colors always suffice")
}

/// Chromatic number by trying every assignment into `k` colors (test oracle).
pub fn chromatic_number_bruteforce(g: &Graph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    let edges = g.edges();
    for k in 1..=n {
        let mut colors = alloc::vec![0usize; n];
        loop {
            if edges.iter().all(|&(u, v)| colors[u] != colors[v]) {
                return k;
            }
            // odometer increment
            let mut i = 0;
            while i < n {
                colors[i] += 1;
                if colors[i] < k {
                    break;
                }
                colors[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
    }
    n
}

/// Whether `g[verts]` has an induced cycle of odd length at least five.
pub fn has_odd_hole(adj: &[VertexSet], verts: VertexSet) -> bool {
    fn extend(adj: &[VertexSet], allowed: VertexSet, start: usize, path: &mut Vec<usize>, inside: VertexSet) -> bool {
        let last = *path.last().unwrap();
        let len = path.len();
        if len >= 5 && len % 2 == 1 && adj[last].contains(start) {
            return true;
        }
        // candidates: neighbours of last, not adjacent to any inner path vertex
        let inner = inside - VertexSet::singleton(last) - VertexSet::singleton(start);
        let mut block = VertexSet::new();
        for v in inner {
            block |= adj[v];
        }
        for w in (adj[last] & allowed) - inside - block {
            // the start may only touch the second and the closing vertex
            if adj[w].contains(start) && len < 4 {
                continue;
            }
            if adj[w].contains(start) && len % 2 == 1 {
                // closing here would give an even cycle; w cannot be extended
                // further either since it already touches the start
                continue;
            }
            path.push(w);
            let mut ins = inside;
            ins.insert(w);
            let found = if adj[w].contains(start) {
                len + 1 >= 5 && (len + 1) % 2 == 1
            } else {
                extend(adj, allowed, start, path, ins)
            };
            path.pop();
            if found {
                return true;
            }
        }
        false
    }
    for s in verts {
        let allowed: VertexSet = verts.iter().filter(|&v| v > s).collect();
        for a in adj[s] & allowed {
            let mut path = alloc::vec![s, a];
            let inside: VertexSet = [s, a].into_iter().collect();
            if extend(adj, allowed, s, &mut path, inside) {
                return true;
            }
        }
    }
    false
}

/// Complement adjacency restricted to `verts`.
pub fn complement_adj(adj: &[VertexSet], verts: VertexSet) -> Vec<VertexSet> {
    (0..adj.len())
        .map(|v| {
            if verts.contains(v) {
                verts - adj[v] - VertexSet::singleton(v)
            } else {
                VertexSet::new()
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, path};

    #[test]
    fn holes() {
        let c5 = cycle(5);
        assert!(has_odd_hole(c5.adjacency(), c5.vertices()));
        let c6 = cycle(6);
        assert!(!has_odd_hole(c6.adjacency(), c6.vertices()));
        let c7 = cycle(7);
        assert!(has_odd_hole(c7.adjacency(), c7.vertices()));
        let k5 = complete(5);
        assert!(!has_odd_hole(k5.adjacency(), k5.vertices()));
        // the complement of C7 is an odd antihole without odd holes
        let co = complement_adj(c7.adjacency(), c7.vertices());
        assert!(!has_odd_hole(&co, c7.vertices()));
        assert!(has_odd_hole(&complement_adj(&co, c7.vertices()), c7.vertices()));
    }

    #[test]
    fn mis_small() {
        let p = path(5);
        assert_eq!(max_independent_set(p.adjacency(), p.vertices()).len(), 3);
        assert_eq!(independence_number_bruteforce(&p), 3);
        let c = cycle(7);
        assert_eq!(max_independent_set(c.adjacency(), c.vertices()).len(), 3);
        assert_eq!(chromatic_number_bruteforce(&c), 3);
    }
}
