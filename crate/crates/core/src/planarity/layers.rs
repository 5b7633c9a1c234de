use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::bitset::VertexSet;
use crate::decomposition::TreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::{components_within, Graph};

use super::embed;

/// Width slack `c0` in the bound `width <= 3 * layers + c0` of
/// [`few_layer_tree_decomposition`]. The radius construction below never
/// exceeds `3 * layers - 1`, so no slack is needed.
pub const FEW_LAYER_WIDTH_SLACK: usize = 0;

/// Breadth-first layers from a root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layering {
    /// `layers[i]` holds the vertices at distance exactly `i`.
    pub layers: Vec<VertexSet>,
    /// Vertices not reachable from the root.
    pub unreachable: VertexSet,
}

impl Layering {
    pub fn depth_of(&self, v: usize) -> Option<usize> {
        self.layers.iter().position(|l| l.contains(v))
    }
}

pub fn bfs_layers(g: &Graph, root: usize) -> Layering {
    bfs_layers_within(g.adjacency(), g.vertices(), root)
}

pub(crate) fn bfs_layers_within(adj: &[VertexSet], verts: VertexSet, root: usize) -> Layering {
    let mut seen = VertexSet::singleton(root);
    let mut layers = alloc::vec![seen];
    loop {
        let mut next = VertexSet::new();
        for v in *layers.last().unwrap() {
            next |= adj[v];
        }
        next &= verts;
        next -= seen;
        if next.is_empty() {
            break;
        }
        seen |= next;
        layers.push(next);
    }
    Layering {
        layers,
        unreachable: verts - seen,
    }
}

/// Tree decomposition of a planar graph each of whose components has a BFS
/// layering with at most `layers_used` layers.
///
/// Per component, the narrower of a greedy minimum-degree elimination and
/// the radius construction from a minimum-eccentricity root is kept. The
/// radius construction bounds the width by `3 * layers_used - 1`.
pub fn few_layer_tree_decomposition(g: &Graph, layers_used: usize) -> Result<TreeDecomposition> {
    let adj = g.adjacency();
    let mut td = TreeDecomposition::default();
    for comp in components_within(adj, g.vertices()) {
        let root = comp
            .iter()
            .min_by_key(|&v| bfs_layers_within(adj, comp, v).layers.len())
            .unwrap();
        let radial = radial_decomposition(adj, comp, root, VertexSet::new())?;
        let greedy = TreeDecomposition::min_degree(adj, comp);
        let best = if greedy.width() <= radial.width() { greedy } else { radial };
        td.graft(best, 0);
    }
    let bound = (3 * layers_used + FEW_LAYER_WIDTH_SLACK) as isize;
    if td.width() > bound.max(0) {
        return Err(Error::ContractBreach(alloc::format!(
            "few-layer decomposition has width {} above {}",
            td.width(),
            bound
        )));
    }
    Ok(td)
}

/// Radius-based decomposition of the band `band` after contracting the
/// connected set `below` (possibly empty) into one root.
///
/// With `below` empty, `root` must lie in `band`; otherwise `root` must lie
/// in `below`. The graph induced on `band ∪ below` must be planar. Bags are
/// unions of three root paths of a BFS tree, so each has at most
/// `3 * depth` band vertices.
pub(crate) fn radial_decomposition(
    adj: &[VertexSet],
    band: VertexSet,
    root: usize,
    below: VertexSet,
) -> Result<TreeDecomposition> {
    if band.is_empty() {
        return Ok(TreeDecomposition::default());
    }
    // contracted adjacency: `root` stands for all of `below`
    let n = adj.len();
    let mut cadj: Vec<VertexSet> = alloc::vec![VertexSet::new(); n];
    let verts = band | VertexSet::singleton(root);
    for v in band {
        cadj[v] = adj[v] & band;
        if adj[v].intersects(&below) {
            cadj[v].insert(root);
            cadj[root].insert(v);
        }
    }
    let rot = embed(&cadj, verts).ok_or(Error::NotPlanar)?;

    // BFS tree over the contracted graph
    let mut parent = alloc::vec![usize::MAX; n];
    let mut depth = alloc::vec![usize::MAX; n];
    depth[root] = 0;
    parent[root] = root;
    let mut frontier = alloc::vec![root];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &x in &frontier {
            for y in cadj[x] {
                if depth[y] == usize::MAX {
                    depth[y] = depth[x] + 1;
                    parent[y] = x;
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    let mut comp_verts = VertexSet::new();
    for v in verts {
        if depth[v] != usize::MAX {
            comp_verts.insert(v);
        }
    }
    if comp_verts != verts {
        return Err(Error::ContractBreach("band is not connected to its root".into()));
    }
    let path = |mut v: usize| {
        let mut p = VertexSet::singleton(v);
        while v != root {
            v = parent[v];
            p.insert(v);
        }
        p
    };
    let strip = |s: VertexSet| if below.is_empty() { s } else { s - VertexSet::singleton(root) };

    if verts.len() == 1 {
        return Ok(TreeDecomposition::single(strip(verts)));
    }

    let rs = super::RotationSystem::new(rot);
    let faces = rs.faces();
    // triangle ids: (face, position)
    let mut tri_of_dart: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut bags = Vec::new();
    let mut edges = Vec::new();
    let mut base = 0;
    for f in &faces {
        let l = f.len();
        let anchor = (0..l).min_by_key(|&t| (depth[f[t]], t)).unwrap();
        let pa = path(f[anchor]);
        for t in 0..l {
            let (a, b) = (f[t], f[(t + 1) % l]);
            tri_of_dart.insert((a, b), base + t);
            bags.push(strip(path(a) | path(b) | pa));
        }
        // spokes between consecutive triangles, except the anchor's tree spoke
        for t in 0..l {
            if t != anchor {
                edges.push((base + (t + l - 1) % l, base + t));
            }
        }
        base += l;
    }
    for u in verts {
        for v in cadj[u].iter().filter(|&v| v > u) {
            let tree = parent[v] == u || parent[u] == v;
            if !tree {
                edges.push((tri_of_dart[&(u, v)], tri_of_dart[&(v, u)]));
            }
        }
    }
    let td = TreeDecomposition { bags, edges };
    debug_assert!(td.is_tree());
    Ok(td)
}
