use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{components_within, neighborhood_adj, Graph};
use crate::planarity::is_planar_adj;

use super::{TreeDecomposition, TreeDecompositionFault};

/// Default vertex ceiling of [`treewidth_exact`].
pub const TW_CEILING: usize = 18;
/// Default vertex ceiling of [`planar_treewidth_exact`].
pub const PTW_CEILING: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BagTag {
    /// At most `k + 1` vertices.
    Small,
    /// The bag's torso in the decomposition is planar.
    PlanarTorso,
}

/// A tree decomposition whose bags are either small or have planar torsos.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PlanarWidthDecomposition {
    pub base: TreeDecomposition,
    pub tags: Vec<BagTag>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlanarWidthFault {
    Base(TreeDecompositionFault),
    TagCount,
    TooLarge(usize),
    NonPlanarTorso(usize),
}

/// Torso of bag `t`: the bag's induced graph plus a clique on its
/// intersection with every neighbouring bag.
pub fn bag_torso(adj: &[VertexSet], td: &TreeDecomposition, t: usize) -> Vec<VertexSet> {
    let bag = td.bags[t];
    let mut out: Vec<VertexSet> = adj.iter().map(|&a| a & bag).collect();
    for v in 0..adj.len() {
        if !bag.contains(v) {
            out[v] = VertexSet::new();
        }
    }
    for s in td.neighbors(t) {
        let adhesion = bag & td.bags[s];
        for v in adhesion {
            out[v] |= adhesion - VertexSet::singleton(v);
        }
    }
    out
}

/// Checks that `pw` is a tree decomposition of `g` whose small bags have at
/// most `k + 1` vertices and whose other bags have planar torsos in the
/// sense of [`bag_torso`].
pub fn verify_planar_width(g: &Graph, pw: &PlanarWidthDecomposition, k: usize) -> core::result::Result<(), PlanarWidthFault> {
    verify_planar_width_within(g.adjacency(), g.vertices(), pw, k)
}

pub(crate) fn verify_planar_width_within(
    adj: &[VertexSet],
    verts: VertexSet,
    pw: &PlanarWidthDecomposition,
    k: usize,
) -> core::result::Result<(), PlanarWidthFault> {
    pw.base.check_within(adj, verts).map_err(PlanarWidthFault::Base)?;
    if pw.tags.len() != pw.base.bags.len() {
        return Err(PlanarWidthFault::TagCount);
    }
    for (t, tag) in pw.tags.iter().enumerate() {
        let bag = pw.base.bags[t];
        match tag {
            BagTag::Small if bag.len() > k + 1 => return Err(PlanarWidthFault::TooLarge(t)),
            BagTag::PlanarTorso if !is_planar_adj(&bag_torso(adj, &pw.base, t), bag) => {
                return Err(PlanarWidthFault::NonPlanarTorso(t))
            }
            _ => {}
        }
    }
    Ok(())
}

/// Treewidth by dynamic programming over vertex subsets: eliminating the
/// set `S` first costs the largest number of vertices outside `S` reached
/// from an eliminated vertex through `S`. Returns the width and an optimal
/// decomposition.
pub fn treewidth_exact(g: &Graph) -> Result<(isize, TreeDecomposition)> {
    let n = g.n();
    if n > TW_CEILING {
        return Err(Error::CeilingExceeded {
            routine: "treewidth_exact",
            size: n,
            ceiling: TW_CEILING,
        });
    }
    if n == 0 {
        return Ok((-1, TreeDecomposition::default()));
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, u| m | 1 << u))
        .collect();
    let full = (1u32 << n) - 1;
    // number of vertices outside s ∪ {v} reachable from v through s
    let q = |s: u32, v: usize| -> u32 {
        let mut seen = 1u32 << v;
        let mut frontier = seen;
        let mut out = 0u32;
        while frontier != 0 {
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                let x = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= adj[x];
            }
            next &= !seen;
            seen |= next;
            out |= next & !s;
            frontier = next & s;
        }
        out.count_ones()
    };
    let mut best = alloc::vec![0i32; 1 << n];
    let mut last = alloc::vec![0u8; 1 << n];
    best[0] = -1;
    for s in 1..=full {
        let mut b = i32::MAX;
        let mut m = s;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            let rest = s & !(1 << v);
            let cand = best[rest as usize].max(q(rest, v) as i32);
            if cand < b {
                b = cand;
                last[s as usize] = v as u8;
            }
        }
        best[s as usize] = b;
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = last[s as usize] as usize;
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    let td = TreeDecomposition::from_elimination_order(g.adjacency(), g.vertices(), &order);
    let width = best[full as usize] as isize;
    debug_assert_eq!(td.width(), width);
    Ok((width, td))
}

/// Planar treewidth and a certifying decomposition.
///
/// Searches decompositions built top-down: a piece is a component `C` of
/// the graph minus its parent bag, attached through `S = N(C)`; its root bag
/// `B` satisfies `S ⊆ B ⊆ S ∪ C`, and every component of `C - B` becomes a
/// child piece. The value is minimal over decompositions of this shape.
pub fn planar_treewidth_exact(g: &Graph) -> Result<(usize, PlanarWidthDecomposition)> {
    planar_treewidth_exact_with(g, PTW_CEILING)
}

pub fn planar_treewidth_exact_with(g: &Graph, ceiling: usize) -> Result<(usize, PlanarWidthDecomposition)> {
    if g.n() > ceiling {
        return Err(Error::CeilingExceeded {
            routine: "planar_treewidth_exact",
            size: g.n(),
            ceiling,
        });
    }
    let adj = g.adjacency();
    let mut k = 0;
    loop {
        if let Some(pw) = planar_width_at_most(adj, g.vertices(), k) {
            debug_assert!(verify_planar_width(g, &pw, k).is_ok());
            return Ok((k, pw));
        }
        k += 1;
    }
}

/// A decomposition of `g[verts]` of planar width at most `k`, if the
/// top-down search finds one.
pub(crate) fn planar_width_at_most(adj: &[VertexSet], verts: VertexSet, k: usize) -> Option<PlanarWidthDecomposition> {
    struct Search<'a> {
        adj: &'a [VertexSet],
        within: VertexSet,
        k: usize,
        /// piece -> chosen root bag
        memo: BTreeMap<VertexSet, Option<(VertexSet, BagTag)>>,
    }
    impl Search<'_> {
        fn piece_torso(&self, s: VertexSet, b: VertexSet, children: &[VertexSet]) -> Vec<VertexSet> {
            let mut t: Vec<VertexSet> = self
                .adj
                .iter()
                .enumerate()
                .map(|(v, &a)| if b.contains(v) { a & b } else { VertexSet::new() })
                .collect();
            let clique = |c: VertexSet, t: &mut Vec<VertexSet>| {
                for v in c {
                    t[v] |= c - VertexSet::singleton(v);
                }
            };
            clique(s, &mut t);
            for &c in children {
                clique(neighborhood_adj(self.adj, c) & self.within, &mut t);
            }
            t
        }

        fn solve(&mut self, c: VertexSet) -> bool {
            if let Some(r) = self.memo.get(&c) {
                return r.is_some();
            }
            let s = neighborhood_adj(self.adj, c) & self.within;
            let mut found = None;
            // whole piece first, then smaller bags
            let mut candidates: Vec<VertexSet> = Vec::new();
            crate::graph::for_each_subset(c, |t| {
                if !t.is_empty() {
                    candidates.push(t);
                }
            });
            candidates.sort_by(|a, b| b.len().cmp(&a.len()).then(a.lex_cmp(b)));
            for t in candidates {
                let b = s | t;
                let children = components_within(self.adj, c - t);
                let tag = if b.len() <= self.k + 1 {
                    BagTag::Small
                } else if is_planar_adj(&self.piece_torso(s, b, &children), b) {
                    BagTag::PlanarTorso
                } else {
                    continue;
                };
                if children.iter().all(|&ch| self.solve(ch)) {
                    found = Some((b, tag));
                    break;
                }
            }
            self.memo.insert(c, found);
            found.is_some()
        }

        fn build(&self, c: VertexSet, out: &mut PlanarWidthDecomposition) -> usize {
            let (b, tag) = self.memo[&c].expect("solved piece");
            let node = out.base.bags.len();
            out.base.bags.push(b);
            out.tags.push(tag);
            for ch in components_within(self.adj, c - b) {
                let child = self.build(ch, out);
                out.base.edges.push((node, child));
            }
            node
        }
    }
    let mut search = Search {
        adj,
        within: verts,
        k,
        memo: BTreeMap::new(),
    };
    let comps = components_within(adj, verts);
    for &c in &comps {
        if !search.solve(c) {
            return None;
        }
    }
    let mut pw = PlanarWidthDecomposition::default();
    let mut roots = Vec::new();
    for &c in &comps {
        roots.push(search.build(c, &mut pw));
    }
    for w in roots.windows(2) {
        pw.base.edges.push((w[0], w[1]));
    }
    Some(pw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, grid};

    #[test]
    fn treewidth_of_small_families() {
        assert_eq!(treewidth_exact(&cycle(6)).unwrap().0, 2);
        assert_eq!(treewidth_exact(&complete(5)).unwrap().0, 4);
        let g = grid(3, 3).unwrap();
        let (w, td) = treewidth_exact(&g).unwrap();
        assert_eq!(w, 3);
        assert!(td.check(&g).is_ok());
        assert_eq!(treewidth_exact(&Graph::empty(3)).unwrap().0, 0);
    }

    #[test]
    fn planar_width() {
        let (k, pw) = planar_treewidth_exact(&grid(3, 3).unwrap()).unwrap();
        assert_eq!(k, 0);
        assert_eq!(pw.base.bags.len(), 1);
        // a clique must sit inside one bag
        assert_eq!(planar_treewidth_exact(&complete(5)).unwrap().0, 4);
        // two K5 sharing a vertex: each block still needs a 5-bag
        let mut b = Graph::builder(9).unwrap();
        b.make_clique(VertexSet::full(5)).unwrap();
        b.make_clique((4..9).collect()).unwrap();
        let g = b.build();
        let (k, pw) = planar_treewidth_exact(&g).unwrap();
        assert_eq!(k, 4);
        assert!(verify_planar_width(&g, &pw, 4).is_ok());
    }

    #[test]
    fn rejects_nonplanar_single_bag() {
        let g = complete(5);
        let pw = PlanarWidthDecomposition {
            base: TreeDecomposition::single(g.vertices()),
            tags: alloc::vec![BagTag::PlanarTorso],
        };
        assert_eq!(verify_planar_width(&g, &pw, 10), Err(PlanarWidthFault::NonPlanarTorso(0)));
    }
}
