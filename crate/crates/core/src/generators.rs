//! Instance generators: grids, walls, apex grids, small named graphs and
//! seeded random families.

use alloc::vec::Vec;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, Weight};
use crate::planarity::{is_planar_adj, RotationSystem};

/// The `(k × r)`-grid, vertex `(i, j)` numbered `i * r + j`.
pub fn grid(k: usize, r: usize) -> Result<Graph> {
    if k == 0 || r == 0 {
        return Err(Error::InvalidParameter("grid dimensions must be positive".into()));
    }
    let mut b = GraphBuilder::new(k * r)?;
    for i in 0..k {
        for j in 0..r {
            let v = i * r + j;
            if j + 1 < r {
                b.add_edge(v, v + 1)?;
            }
            if i + 1 < k {
                b.add_edge(v, v + r)?;
            }
        }
    }
    Ok(b.build())
}

/// The `(k × k)`-grid plus a universal vertex, numbered last.
pub fn apex_grid(k: usize) -> Result<Graph> {
    let g = grid(k, k)?;
    let apex = k * k;
    let mut b = GraphBuilder::new(apex + 1)?;
    for (u, v) in g.edges() {
        b.add_edge(u, v)?;
    }
    for v in 0..apex {
        b.add_edge(v, apex)?;
    }
    Ok(b.build())
}

/// An elementary wall together with its named parts.
#[derive(Clone, Debug)]
pub struct Wall {
    pub graph: Graph,
    pub height: usize,
    /// 1-based grid coordinates `(x, y)` of each vertex.
    pub coords: Vec<(usize, usize)>,
    /// Cyclic order of the perimeter.
    pub perimeter: Vec<usize>,
    pub pegs: VertexSet,
    pub corners: [usize; 4],
    /// `layers[0]` is the perimeter.
    pub layers: Vec<VertexSet>,
    pub central: (usize, usize),
}

/// The elementary `r`-wall: the `(2r × r)`-grid without the vertical edges
/// `(x, y)(x, y+1)` for odd `x + y`, minus the two resulting degree-one
/// vertices. Vertices are numbered row by row (`y`, then `x`).
pub fn wall(r: usize) -> Result<Wall> {
    if r < 3 || r % 2 == 0 {
        return Err(Error::InvalidParameter(alloc::format!("wall height must be odd and at least 3, got {r}")));
    }
    let w = 2 * r;
    let mut coords = Vec::new();
    let mut index = alloc::vec![alloc::vec![usize::MAX; r + 1]; w + 1];
    for y in 1..=r {
        for x in 1..=w {
            if (x, y) == (w, 1) || (x, y) == (1, r) {
                continue;
            }
            index[x][y] = coords.len();
            coords.push((x, y));
        }
    }
    let mut b = GraphBuilder::new(coords.len())?;
    for (v, &(x, y)) in coords.iter().enumerate() {
        if x < w && index[x + 1][y] != usize::MAX {
            b.add_edge(v, index[x + 1][y])?;
        }
        if y < r && (x + y) % 2 == 0 && index[x][y + 1] != usize::MAX {
            b.add_edge(v, index[x][y + 1])?;
        }
    }
    let graph = b.build();
    debug_assert!(graph.adjacency().iter().all(|a| a.len() >= 2));

    let layers = wall_layers(&graph, &coords, (r - 1) / 2);
    let perimeter = outer_face(&graph, &coords, graph.vertices());
    let pegs = perimeter.iter().copied().filter(|&v| graph.degree(v) == 2).collect();
    let corners = [index[1][1], index[2][r], index[w - 1][1], index[w][r]];
    let in_layers = layers.iter().fold(VertexSet::new(), |a, &l| a | l);
    // the branch vertices left inside the innermost layer lie on one row;
    // the central pair is the middle two of them
    let mut inner: Vec<usize> = (graph.vertices() - in_layers)
        .iter()
        .filter(|&v| graph.degree(v) == 3)
        .collect();
    inner.sort_by_key(|&v| (coords[v].1, coords[v].0));
    if inner.len() < 2 || inner.len() % 2 != 0 {
        return Err(Error::ContractBreach(alloc::format!("wall has {} inner branch vertices", inner.len())));
    }
    let mid = inner.len() / 2;
    let central = (inner[mid - 1], inner[mid]);
    Ok(Wall {
        graph,
        height: r,
        coords,
        perimeter,
        pegs,
        corners,
        layers,
        central,
    })
}

/// Straight-line rotation at grid coordinates, counter-clockwise.
fn geometric_rotation(g: &Graph, coords: &[(usize, usize)], keep: VertexSet) -> RotationSystem {
    let dir = |v: usize, u: usize| {
        let (x0, y0) = coords[v];
        let (x1, y1) = coords[u];
        // east, north, west, south
        if x1 > x0 {
            0
        } else if y1 > y0 {
            1
        } else if x1 < x0 {
            2
        } else {
            3
        }
    };
    let rot = (0..g.n())
        .map(|v| {
            if !keep.contains(v) {
                return Vec::new();
            }
            let mut nb: Vec<usize> = (g.neighbors(v) & keep).iter().collect();
            nb.sort_by_key(|&u| dir(v, u));
            nb
        })
        .collect();
    RotationSystem::new(rot)
}

/// The longest face of the straight-line drawing restricted to `keep`.
fn outer_face(g: &Graph, coords: &[(usize, usize)], keep: VertexSet) -> Vec<usize> {
    geometric_rotation(g, coords, keep)
        .faces()
        .into_iter()
        .max_by_key(|f| f.len())
        .unwrap_or_default()
}

fn wall_layers(g: &Graph, coords: &[(usize, usize)], count: usize) -> Vec<VertexSet> {
    let mut keep = g.vertices();
    let mut layers = Vec::new();
    for _ in 0..count {
        let face: VertexSet = outer_face(g, coords, keep).into_iter().collect();
        layers.push(face);
        keep -= face;
        loop {
            let low: VertexSet = keep.iter().filter(|&v| (g.neighbors(v) & keep).len() <= 1).collect();
            if low.is_empty() {
                break;
            }
            keep -= low;
        }
    }
    layers
}

pub fn complete(n: usize) -> Graph {
    let mut b = GraphBuilder::new(n).expect("size");
    b.make_clique(VertexSet::full(n)).unwrap();
    b.build()
}

pub fn complete_bipartite(a: usize, c: usize) -> Graph {
    let mut b = GraphBuilder::new(a + c).expect("size");
    for u in 0..a {
        for v in a..a + c {
            b.add_edge(u, v).unwrap();
        }
    }
    b.build()
}

pub fn path(n: usize) -> Graph {
    let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &e).expect("size")
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &e).expect("size")
}

/// Star with center 0 and `leaves` leaves.
pub fn star(leaves: usize) -> Graph {
    let e: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    Graph::from_edges(leaves + 1, &e).expect("size")
}

/// Wheel: a cycle on `1..=rim` plus hub 0.
pub fn wheel(rim: usize) -> Graph {
    let mut e: Vec<_> = (1..=rim).map(|i| (0, i)).collect();
    for i in 1..=rim {
        e.push((i, i % rim + 1));
    }
    Graph::from_edges(rim + 1, &e).expect("size")
}

pub fn icosahedron() -> Graph {
    // two pentagonal rings between two poles
    let mut e = Vec::new();
    for i in 0..5 {
        let (a, b) = (1 + i, 1 + (i + 1) % 5);
        let (c, d) = (6 + i, 6 + (i + 1) % 5);
        e.extend_from_slice(&[(0, a), (a, b), (11, c), (c, d), (a, c), (b, c)]);
    }
    Graph::from_edges(12, &e).expect("size")
}

/// `G(n, p)` with `p = num / den`.
pub fn random_graph<R: Rng + ?Sized>(rng: &mut R, n: usize, num: u32, den: u32) -> Graph {
    let mut b = GraphBuilder::new(n).expect("size");
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_range(0..den) < num {
                b.add_edge(u, v).unwrap();
            }
        }
    }
    b.build()
}

/// Random planar graph: candidate edges in random order, each kept while
/// the graph stays planar, until `target_edges` are placed.
pub fn random_planar<R: Rng + ?Sized>(rng: &mut R, n: usize, target_edges: usize) -> Graph {
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            pairs.push((u, v));
        }
    }
    pairs.shuffle(rng);
    let mut adj = alloc::vec![VertexSet::new(); n];
    let all = VertexSet::full(n);
    let mut m = 0;
    for (u, v) in pairs {
        if m >= target_edges {
            break;
        }
        adj[u].insert(v);
        adj[v].insert(u);
        if is_planar_adj(&adj, all) {
            m += 1;
        } else {
            adj[u].remove(v);
            adj[v].remove(u);
        }
    }
    let mut b = GraphBuilder::new(n).expect("size");
    for u in 0..n {
        for v in adj[u].iter().filter(|&v| v > u) {
            b.add_edge(u, v).unwrap();
        }
    }
    b.build()
}

/// Uniformly random labelled tree by random attachment.
pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Graph {
    let e: Vec<_> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    Graph::from_edges(n, &e).expect("size")
}

/// Copy of `g` with every edge given a random weight `p / q`,
/// `1 <= p <= max_num`, `1 <= q <= max_den`.
pub fn with_random_weights<R: Rng + ?Sized>(rng: &mut R, g: &Graph, max_num: i64, max_den: i64) -> Graph {
    let mut b = GraphBuilder::new(g.n()).expect("size");
    for (u, v) in g.edges() {
        let w = Weight::new(
            BigInt::from(rng.gen_range(1..=max_num)),
            BigInt::from(rng.gen_range(1..=max_den)),
        );
        b.add_weighted_edge(u, v, w).unwrap();
    }
    b.build()
}

/// Relabels `g` by a uniformly random permutation.
pub fn shuffled<R: Rng + ?Sized>(rng: &mut R, g: &Graph) -> (Graph, Vec<usize>) {
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(rng);
    let mut b = GraphBuilder::new(g.n()).expect("size");
    for (u, v) in g.edges() {
        match g.explicit_weight(u, v) {
            Some(w) => b.add_weighted_edge(perm[u], perm[v], w.clone()).unwrap(),
            None => b.add_edge(perm[u], perm[v]).unwrap(),
        };
    }
    (b.build(), perm)
}
