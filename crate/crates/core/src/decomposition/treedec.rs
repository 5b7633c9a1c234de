use alloc::vec::Vec;

use crate::bitset::VertexSet;
use crate::graph::Graph;

/// A tree decomposition: bags indexed by tree node, plus the tree edges.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TreeDecomposition {
    pub bags: Vec<VertexSet>,
    pub edges: Vec<(usize, usize)>,
}

/// Why a tree decomposition was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeDecompositionFault {
    NotATree,
    ForeignVertex(usize),
    UncoveredVertex(usize),
    UncoveredEdge(usize, usize),
    DisconnectedOccurrences(usize),
}

impl TreeDecomposition {
    /// A single bag holding `s`.
    pub fn single(s: VertexSet) -> Self {
        TreeDecomposition {
            bags: alloc::vec![s],
            edges: Vec::new(),
        }
    }

    /// Largest bag size minus one; -1 when there is no nonempty bag.
    pub fn width(&self) -> isize {
        self.bags.iter().map(|b| b.len() as isize).max().unwrap_or(0) - 1
    }

    pub fn vertices(&self) -> VertexSet {
        self.bags.iter().fold(VertexSet::new(), |a, &b| a | b)
    }

    pub fn neighbors(&self, t: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter_map(move |&(a, b)| {
            if a == t {
                Some(b)
            } else if b == t {
                Some(a)
            } else {
                None
            }
        })
    }

    /// Bag intersections across every tree edge.
    pub fn adhesions(&self) -> Vec<((usize, usize), VertexSet)> {
        self.edges
            .iter()
            .map(|&(a, b)| ((a, b), self.bags[a] & self.bags[b]))
            .collect()
    }

    /// Attaches `other` below node `at` (or as a new root if `self` is
    /// empty), shifting its node indices.
    pub fn graft(&mut self, other: TreeDecomposition, at: usize) {
        let off = self.bags.len();
        if off > 0 && !other.bags.is_empty() {
            self.edges.push((at, off));
        }
        self.bags.extend(other.bags);
        self.edges.extend(other.edges.into_iter().map(|(a, b)| (a + off, b + off)));
    }

    pub fn is_tree(&self) -> bool {
        let k = self.bags.len();
        if k == 0 {
            return self.edges.is_empty();
        }
        if self.edges.len() != k - 1 {
            return false;
        }
        let mut uf: Vec<usize> = (0..k).collect();
        fn find(uf: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while uf[r] != r {
                r = uf[r];
            }
            let mut c = x;
            while uf[c] != r {
                let n = uf[c];
                uf[c] = r;
                c = n;
            }
            r
        }
        for &(a, b) in &self.edges {
            if a >= k || b >= k {
                return false;
            }
            let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
            if ra == rb {
                return false;
            }
            uf[ra] = rb;
        }
        true
    }

    /// Checks the decomposition against `g[verts]`.
    pub fn check_within(&self, adj: &[VertexSet], verts: VertexSet) -> Result<(), TreeDecompositionFault> {
        if !self.is_tree() {
            return Err(TreeDecompositionFault::NotATree);
        }
        let covered = self.vertices();
        if let Some(v) = (covered - verts).first() {
            return Err(TreeDecompositionFault::ForeignVertex(v));
        }
        if let Some(v) = (verts - covered).first() {
            return Err(TreeDecompositionFault::UncoveredVertex(v));
        }
        for u in verts {
            for v in (adj[u] & verts).iter().filter(|&v| v > u) {
                if !self.bags.iter().any(|b| b.contains(u) && b.contains(v)) {
                    return Err(TreeDecompositionFault::UncoveredEdge(u, v));
                }
            }
        }
        for v in verts {
            let nodes: Vec<usize> = (0..self.bags.len()).filter(|&t| self.bags[t].contains(v)).collect();
            // occurrences are connected iff they span |nodes| - 1 tree edges
            let inner = self
                .edges
                .iter()
                .filter(|&&(a, b)| self.bags[a].contains(v) && self.bags[b].contains(v))
                .count();
            if inner + 1 != nodes.len() {
                return Err(TreeDecompositionFault::DisconnectedOccurrences(v));
            }
        }
        Ok(())
    }

    pub fn check(&self, g: &Graph) -> Result<(), TreeDecompositionFault> {
        self.check_within(g.adjacency(), g.vertices())
    }

    /// Decomposition induced by eliminating `order` (which must list exactly
    /// the members of `verts`).
    pub fn from_elimination_order(adj: &[VertexSet], verts: VertexSet, order: &[usize]) -> TreeDecomposition {
        let n = adj.len();
        let mut fill: Vec<VertexSet> = adj.iter().map(|&a| a & verts).collect();
        let mut pos = alloc::vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut bags = Vec::with_capacity(order.len());
        let mut parent_vertex = Vec::with_capacity(order.len());
        let mut remaining = verts;
        for &v in order {
            remaining.remove(v);
            let later = fill[v] & remaining;
            for u in later {
                fill[u] |= later;
                fill[u].remove(u);
            }
            bags.push(later | VertexSet::singleton(v));
            parent_vertex.push(later.iter().min_by_key(|&u| pos[u]));
        }
        let mut td = TreeDecomposition {
            bags,
            edges: Vec::new(),
        };
        let mut roots = Vec::new();
        for (i, p) in parent_vertex.iter().enumerate() {
            match p {
                Some(u) => td.edges.push((i, pos[*u])),
                None => roots.push(i),
            }
        }
        for w in roots.windows(2) {
            td.edges.push((w[0], w[1]));
        }
        td
    }

    /// Greedy minimum-degree elimination.
    pub fn min_degree(adj: &[VertexSet], verts: VertexSet) -> TreeDecomposition {
        let mut fill: Vec<VertexSet> = adj.iter().map(|&a| a & verts).collect();
        let mut remaining = verts;
        let mut order = Vec::with_capacity(verts.len());
        while let Some(v) = remaining.iter().min_by_key(|&v| (fill[v] & remaining).len()) {
            remaining.remove(v);
            let later = fill[v] & remaining;
            for u in later {
                fill[u] |= later;
                fill[u].remove(u);
            }
            order.push(v);
        }
        Self::from_elimination_order(adj, verts, &order)
    }
}
