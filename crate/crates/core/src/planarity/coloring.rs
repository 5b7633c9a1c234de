use alloc::vec::Vec;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;

use super::is_planar_adj;

/// Largest graph on which [`planar_color`] searches for an optimal coloring.
pub const COLOR_BACKTRACK_CEILING: usize = 40;

/// Search-node budget for a single exact coloring attempt.
const BACKTRACK_BUDGET: u64 = 2_000_000;

/// A proper vertex coloring using exactly the colors `0..color_count`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    pub colors: Vec<usize>,
    pub color_count: usize,
}

impl Coloring {
    /// Renumbers colors by first appearance so that all of `0..k` are used.
    pub fn normalized(colors: Vec<usize>) -> Coloring {
        let mut map: Vec<usize> = Vec::new();
        let mut out = Vec::with_capacity(colors.len());
        for c in colors {
            if c >= map.len() {
                map.resize(c + 1, usize::MAX);
            }
            if map[c] == usize::MAX {
                map[c] = out.iter().copied().max().map_or(0, |m: usize| m + 1);
            }
            out.push(map[c]);
        }
        let color_count = out.iter().copied().max().map_or(0, |m| m + 1);
        Coloring {
            colors: out,
            color_count,
        }
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        if self.colors.len() != g.n() {
            return false;
        }
        let mut used = alloc::vec![false; self.color_count];
        for &c in &self.colors {
            if c >= self.color_count {
                return false;
            }
            used[c] = true;
        }
        used.iter().all(|&u| u) && g.edges().iter().all(|&(u, v)| self.colors[u] != self.colors[v])
    }
}

/// A planar coloring together with the palette size it is guaranteed to
/// respect: 4 when the exact search ran, 5 otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarColoring {
    pub coloring: Coloring,
    pub palette: usize,
    /// Whether `coloring` is known to be optimal.
    pub optimal: bool,
}

/// Colors a planar graph with at most five colors; on graphs with at most
/// `ceiling` vertices an optimal coloring (at most four colors) is searched
/// for by backtracking.
pub fn planar_color(g: &Graph, ceiling: usize) -> Result<PlanarColoring> {
    if !is_planar_adj(g.adjacency(), g.vertices()) {
        return Err(Error::NotPlanar);
    }
    let five = five_color(g);
    if g.n() <= ceiling {
        if let Some((c, optimal)) = optimal_coloring(g.adjacency(), g.vertices(), 4) {
            return Ok(PlanarColoring {
                coloring: Coloring::normalized(c),
                palette: 4,
                optimal,
            });
        }
    }
    Ok(PlanarColoring {
        coloring: Coloring::normalized(five),
        palette: 5,
        optimal: false,
    })
}

/// Contraction-based 5-coloring.
fn five_color(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut adj: Vec<VertexSet> = g.adjacency().to_vec();
    let mut alive = g.vertices();
    // (vertex, merged-into or usize::MAX, neighbours when removed)
    let mut order: Vec<(usize, usize, VertexSet)> = Vec::new();
    while let Some(v) = alive.iter().min_by_key(|&v| (adj[v] & alive).len()) {
        let nb = adj[v] & alive;
        if nb.len() >= 5 {
            // contract two non-adjacent neighbours a, b together through v
            let mut pair = None;
            'find: for a in nb {
                for b in nb.iter().filter(|&b| b > a) {
                    if !adj[a].contains(b) {
                        pair = Some((a, b));
                        break 'find;
                    }
                }
            }
            let (a, b) = pair.expect("planar degree-5 neighbourhood is never a clique");
            alive.remove(v);
            alive.remove(b);
            let merged = (adj[a] | adj[b]) & alive;
            for u in adj[b] & alive {
                adj[u].remove(b);
                adj[u].insert(a);
            }
            adj[a] = merged - VertexSet::singleton(a);
            let mut vnb = nb;
            vnb.remove(b);
            order.push((v, usize::MAX, vnb));
            order.push((b, a, VertexSet::new()));
        } else {
            alive.remove(v);
            order.push((v, usize::MAX, nb));
        }
    }
    let mut color = alloc::vec![usize::MAX; n];
    for &(v, into, nb) in order.iter().rev() {
        if into != usize::MAX {
            color[v] = color[into];
            continue;
        }
        let mut used = [false; 6];
        for u in nb {
            used[color[u]] = true;
        }
        color[v] = (0..6).find(|&c| !used[c]).unwrap();
    }
    debug_assert!(color.iter().all(|&c| c < 5));
    color
}

/// Minimum coloring of `g[verts]` with at most `max_colors` colors by DSatur
/// backtracking. Returns the coloring and whether optimality was proven
/// within the node budget.
pub(crate) fn optimal_coloring(
    adj: &[VertexSet],
    verts: VertexSet,
    max_colors: usize,
) -> Option<(Vec<usize>, bool)> {
    let n = adj.len();
    if verts.is_empty() {
        return Some((alloc::vec![0; n], true));
    }
    let mut best: Option<Vec<usize>> = None;
    let mut proven = true;
    let lower = if verts.iter().all(|v| (adj[v] & verts).is_empty()) { 1 } else { 2 };
    for k in lower..=max_colors {
        let mut budget = BACKTRACK_BUDGET;
        match color_with(adj, verts, k, &mut budget) {
            Some(c) => {
                best = Some(c);
                break;
            }
            None if budget == 0 => proven = false,
            None => {}
        }
    }
    best.map(|c| (c, proven))
}

/// Proper coloring of `g[verts]` with `k` colors, if one exists.
pub(crate) fn color_with(adj: &[VertexSet], verts: VertexSet, k: usize, budget: &mut u64) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut color = alloc::vec![usize::MAX; n];
    for v in 0..n {
        if !verts.contains(v) {
            color[v] = 0;
        }
    }
    fn go(adj: &[VertexSet], verts: VertexSet, k: usize, color: &mut Vec<usize>, left: usize, budget: &mut u64) -> bool {
        if left == 0 {
            return true;
        }
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        // DSatur: most distinct neighbour colors, then most uncolored neighbours
        let mut pick = usize::MAX;
        let mut key = (0usize, 0usize);
        for v in verts {
            if color[v] != usize::MAX {
                continue;
            }
            let mut seen = 0u64;
            let mut free = 0;
            for u in adj[v] & verts {
                if color[u] == usize::MAX {
                    free += 1;
                } else {
                    seen |= 1 << color[u];
                }
            }
            let kk = (seen.count_ones() as usize, free);
            if pick == usize::MAX || kk > key {
                pick = v;
                key = kk;
            }
        }
        let v = pick;
        let mut used = 0u64;
        let mut max_used = 0;
        for u in verts {
            if color[u] != usize::MAX {
                max_used = max_used.max(color[u] + 1);
            }
        }
        for u in adj[v] & verts {
            if color[u] != usize::MAX {
                used |= 1 << color[u];
            }
        }
        // colors above max_used + 1 are symmetric; try one fresh color only
        for c in 0..k.min(max_used + 1) {
            if used >> c & 1 == 0 {
                color[v] = c;
                if go(adj, verts, k, color, left - 1, budget) {
                    return true;
                }
                color[v] = usize::MAX;
            }
        }
        false
    }
    if go(adj, verts, k, &mut color, verts.len(), budget) {
        Some(color)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_cycle_needs_three() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let c = planar_color(&g, COLOR_BACKTRACK_CEILING).unwrap();
        assert_eq!(c.coloring.color_count, 3);
        assert!(c.coloring.is_proper(&g));
        assert_eq!(c.palette, 4);
    }

    #[test]
    fn five_coloring_without_backtracking() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let c = planar_color(&g, 0).unwrap();
        assert!(c.coloring.is_proper(&g));
        assert!(c.coloring.color_count <= 5);
        assert_eq!(c.palette, 5);
    }

    #[test]
    fn rejects_k5() {
        let mut e = Vec::new();
        for u in 0..5 {
            for v in u + 1..5 {
                e.push((u, v));
            }
        }
        let g = Graph::from_edges(5, &e).unwrap();
        assert_eq!(planar_color(&g, 40).unwrap_err(), Error::NotPlanar);
    }
}
