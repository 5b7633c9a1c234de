//! Immutable simple graphs with optional exact edge weights, plus the set
//! utilities everything else is built from.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::bitset::{VertexSet, MAX_VERTICES};
use crate::error::{Error, Result};

/// Exact edge weight.
pub type Weight = BigRational;

/// Undirected simple graph on `0..n`.
///
/// Edges carry an explicit weight only when one was supplied; every other
/// edge weighs 1. Two graphs are equal when they have the same adjacency and
/// the same explicit weights.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Graph {
    adj: Vec<VertexSet>,
    weights: BTreeMap<(usize, usize), Weight>,
}

#[inline]
fn key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Graph {
        assert!(n <= MAX_VERTICES, "vertex count {n} exceeds {MAX_VERTICES}");
        Graph {
            adj: alloc::vec![VertexSet::new(); n],
            weights: BTreeMap::new(),
        }
    }

    pub fn builder(n: usize) -> Result<GraphBuilder> {
        GraphBuilder::new(n)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut b = GraphBuilder::new(n)?;
        for &(u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    #[inline]
    pub fn adjacency(&self) -> &[VertexSet] {
        &self.adj
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].contains(v)
    }

    /// All edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m());
        for u in 0..self.n() {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    /// Weight of an existing edge (1 unless given explicitly).
    pub fn weight(&self, u: usize, v: usize) -> Weight {
        debug_assert!(self.has_edge(u, v));
        self.weights
            .get(&key(u, v))
            .cloned()
            .unwrap_or_else(Weight::one)
    }

    pub fn explicit_weight(&self, u: usize, v: usize) -> Option<&Weight> {
        self.weights.get(&key(u, v))
    }

    pub fn explicit_weights(&self) -> &BTreeMap<(usize, usize), Weight> {
        &self.weights
    }

    pub fn is_weighted(&self) -> bool {
        !self.weights.is_empty()
    }

    pub fn without_weights(&self) -> Graph {
        Graph {
            adj: self.adj.clone(),
            weights: BTreeMap::new(),
        }
    }

    /// `g[s]` relabelled to `0..|s|` in increasing order, with weights.
    /// The second component maps new indices to old ones.
    pub fn induced(&self, s: VertexSet) -> (Graph, Vec<usize>) {
        let map: Vec<usize> = s.iter().collect();
        let mut adj = alloc::vec![VertexSet::new(); map.len()];
        for (i, &v) in map.iter().enumerate() {
            for u in self.adj[v] & s {
                adj[i].insert(s.rank(u));
            }
        }
        let mut weights = BTreeMap::new();
        for (&(u, v), w) in &self.weights {
            if s.contains(u) && s.contains(v) {
                weights.insert((s.rank(u), s.rank(v)), w.clone());
            }
        }
        (Graph { adj, weights }, map)
    }

    /// Same vertex indices, but only the edges inside `s` survive.
    pub fn restrict(&self, s: VertexSet) -> Graph {
        let adj = self
            .adj
            .iter()
            .enumerate()
            .map(|(v, &a)| if s.contains(v) { a & s } else { VertexSet::new() })
            .collect();
        let weights = self
            .weights
            .iter()
            .filter(|((u, v), _)| s.contains(*u) && s.contains(*v))
            .map(|(k, w)| (*k, w.clone()))
            .collect();
        Graph { adj, weights }
    }

    /// Same graph without the edges that have both ends in `x`.
    pub fn without_edges_inside(&self, x: VertexSet) -> Graph {
        let adj = self
            .adj
            .iter()
            .enumerate()
            .map(|(v, &a)| if x.contains(v) { a - x } else { a })
            .collect();
        let weights = self
            .weights
            .iter()
            .filter(|((u, v), _)| !(x.contains(*u) && x.contains(*v)))
            .map(|(k, w)| (*k, w.clone()))
            .collect();
        Graph { adj, weights }
    }

    /// Assembles a graph from symmetric rows and weights keyed by `(u, v)`
    /// with `u < v`.
    pub(crate) fn from_parts(adj: Vec<VertexSet>, weights: BTreeMap<(usize, usize), Weight>) -> Graph {
        Graph { adj, weights }
    }

    /// Vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let off = self.n();
        let mut b = GraphBuilder::new(off + other.n())?;
        b.copy_from(self, 0);
        b.copy_from(other, off);
        Ok(b.build())
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || component_of(&self.adj, self.vertices(), 0).len() == self.n()
    }
}

/// Incremental constructor for [`Graph`].
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    adj: Vec<VertexSet>,
    weights: BTreeMap<(usize, usize), Weight>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Result<GraphBuilder> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                n,
                max: MAX_VERTICES,
            });
        }
        Ok(GraphBuilder {
            adj: alloc::vec![VertexSet::new(); n],
            weights: BTreeMap::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    fn check(&self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        for x in [u, v] {
            if x >= n {
                return Err(Error::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].contains(v)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<&mut Self> {
        self.check(u, v)?;
        if self.adj[u].contains(v) {
            return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(self)
    }

    pub fn add_weighted_edge(&mut self, u: usize, v: usize, w: Weight) -> Result<&mut Self> {
        if w.is_negative() {
            return Err(Error::NegativeWeight(u.min(v), u.max(v)));
        }
        self.add_edge(u, v)?;
        self.weights.insert(key(u, v), w);
        Ok(self)
    }

    /// Adds `uv` unless it is already present.
    pub fn join(&mut self, u: usize, v: usize) -> Result<&mut Self> {
        self.check(u, v)?;
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(self)
    }

    pub fn make_clique(&mut self, s: VertexSet) -> Result<&mut Self> {
        for u in s {
            for v in s.iter().filter(|&v| v > u) {
                self.join(u, v)?;
            }
        }
        Ok(self)
    }

    fn copy_from(&mut self, g: &Graph, off: usize) {
        for (u, &a) in g.adj.iter().enumerate() {
            for v in a {
                self.adj[u + off].insert(v + off);
            }
        }
        for (&(u, v), w) in &g.weights {
            self.weights.insert((u + off, v + off), w.clone());
        }
    }

    pub fn build(self) -> Graph {
        Graph {
            adj: self.adj,
            weights: self.weights,
        }
    }
}

/// Component of `g[within]` containing `v`.
pub fn component_of(adj: &[VertexSet], within: VertexSet, v: usize) -> VertexSet {
    let mut comp = VertexSet::singleton(v);
    let mut frontier = comp;
    while !frontier.is_empty() {
        let mut next = VertexSet::new();
        for u in frontier {
            next |= adj[u];
        }
        next &= within;
        next -= comp;
        comp |= next;
        frontier = next;
    }
    comp
}

/// Components of `g[within]`, ordered by smallest vertex.
pub fn components_within(adj: &[VertexSet], within: VertexSet) -> Vec<VertexSet> {
    let mut rest = within;
    let mut out = Vec::new();
    while let Some(v) = rest.first() {
        let c = component_of(adj, rest, v);
        rest -= c;
        out.push(c);
    }
    out
}

pub fn connected_components(g: &Graph) -> Vec<VertexSet> {
    components_within(&g.adj, g.vertices())
}

pub fn is_connected_within(adj: &[VertexSet], s: VertexSet) -> bool {
    match s.first() {
        None => true,
        Some(v) => component_of(adj, s, v) == s,
    }
}

/// Open neighbourhood `N(x)`.
pub fn neighborhood_adj(adj: &[VertexSet], x: VertexSet) -> VertexSet {
    let mut out = VertexSet::new();
    for v in x {
        out |= adj[v];
    }
    out - x
}

pub fn neighborhood(g: &Graph, x: VertexSet) -> VertexSet {
    neighborhood_adj(&g.adj, x)
}

/// Adjacency of `torso(g, x)` over the original index space; vertices
/// outside `x` are isolated.
pub fn torso_adj(adj: &[VertexSet], x: VertexSet) -> Vec<VertexSet> {
    let mut out: Vec<VertexSet> = adj
        .iter()
        .enumerate()
        .map(|(v, &a)| if x.contains(v) { a & x } else { VertexSet::new() })
        .collect();
    let all = VertexSet::full(adj.len());
    for c in components_within(adj, all - x) {
        let nb = neighborhood_adj(adj, c);
        for u in nb {
            out[u] |= nb;
            out[u].remove(u);
        }
    }
    out
}

/// `torso(g, x)`: `g[x]` plus a clique on `N(C)` for every component `C` of
/// `g - x`. The result keeps the index space of `g`; vertices outside `x`
/// are isolated. No weights are carried.
pub fn torso(g: &Graph, x: VertexSet) -> Graph {
    Graph {
        adj: torso_adj(&g.adj, x & g.vertices()),
        weights: BTreeMap::new(),
    }
}

/// An ordered pair `(left, right)` covering the vertex set with no edge
/// between the two private parts.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Separation {
    pub left: VertexSet,
    pub right: VertexSet,
}

impl Separation {
    pub fn order(&self) -> usize {
        (self.left & self.right).len()
    }

    pub fn separator(&self) -> VertexSet {
        self.left & self.right
    }

    pub fn left_only(&self) -> VertexSet {
        self.left - self.right
    }

    pub fn right_only(&self) -> VertexSet {
        self.right - self.left
    }

    pub fn is_valid(&self, g: &Graph) -> bool {
        let all = g.vertices();
        if (self.left | self.right) != all || !self.left.is_subset(&all) || !self.right.is_subset(&all) {
            return false;
        }
        let r = self.right_only();
        self.left_only().iter().all(|v| !g.adj[v].intersects(&r))
    }
}

/// All subsets of `universe` with at most `k` members, by increasing size
/// and then in lexicographic order of the member list.
pub fn subsets_up_to(universe: VertexSet, k: usize) -> Vec<VertexSet> {
    let elems = universe.to_vec();
    let mut out = Vec::new();
    for size in 0..=k.min(elems.len()) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            out.push(idx.iter().map(|&i| elems[i]).collect());
            let Some(i) = (0..size).rev().find(|&i| idx[i] < elems.len() - size + i) else {
                break;
            };
            idx[i] += 1;
            for j in i + 1..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    out
}

/// Calls `f` on every subset of `universe` (at most 2^63 of them).
pub fn for_each_subset(universe: VertexSet, mut f: impl FnMut(VertexSet)) {
    let elems = universe.to_vec();
    assert!(elems.len() < 64);
    for mask in 0u64..(1u64 << elems.len()) {
        f(mask_to_set(&elems, mask));
    }
}

pub(crate) fn mask_to_set(elems: &[usize], mut mask: u64) -> VertexSet {
    let mut s = VertexSet::new();
    while mask != 0 {
        let b = mask.trailing_zeros() as usize;
        s.insert(elems[b]);
        mask &= mask - 1;
    }
    s
}

fn separations_inner(
    g: &Graph,
    max_order: usize,
    small_side_bound: usize,
    include_trivial: bool,
) -> Vec<Separation> {
    let all = g.vertices();
    let mut out = Vec::new();
    for s in subsets_up_to(all, max_order) {
        for c in components_within(&g.adj, all - s) {
            let left = c | s;
            let right = all - c;
            let private = right - left;
            if private.len() >= small_side_bound || (!include_trivial && private.is_empty()) {
                continue;
            }
            out.push(Separation { left, right });
        }
    }
    out
}

/// Separations `(A, B)` of order at most `max_order` with `g[A∖B]` connected,
/// `B∖A` nonempty and `|B∖A| < small_side_bound`.
///
/// Each one arises from exactly one separator `s` and one component of
/// `g - s`, so the output has no duplicates.
pub fn enumerate_separations(g: &Graph, max_order: usize, small_side_bound: usize) -> Vec<Separation> {
    separations_inner(g, max_order, small_side_bound, false)
}

/// Like [`enumerate_separations`] but also yields the degenerate pairs with
/// `B∖A = ∅`, i.e. a separator whose removal leaves one big connected part.
pub fn enumerate_separations_with_trivial(
    g: &Graph,
    max_order: usize,
    small_side_bound: usize,
) -> Vec<Separation> {
    separations_inner(g, max_order, small_side_bound, true)
}

/// Outcome of an unbreakability test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Unbreakability {
    Unbreakable,
    Witness(Separation),
}

impl Unbreakability {
    pub fn is_unbreakable(&self) -> bool {
        matches!(self, Unbreakability::Unbreakable)
    }
}

/// Default vertex ceiling for [`is_unbreakable`].
pub const UNBREAKABLE_CEILING: usize = 40;

/// Decides `(s, c)`-unbreakability: is there a separation of order at most
/// `c` whose two private sides both have at least `s` vertices?
pub fn is_unbreakable(g: &Graph, s: usize, c: usize, ceiling: usize) -> Result<Unbreakability> {
    if s == 0 {
        return Err(Error::InvalidParameter("s must be at least 1".into()));
    }
    if g.n() > ceiling {
        return Err(Error::CeilingExceeded {
            routine: "is_unbreakable",
            size: g.n(),
            ceiling,
        });
    }
    let all = g.vertices();
    for sep in subsets_up_to(all, c) {
        let comps = components_within(&g.adj, all - sep);
        let total: usize = comps.iter().map(|c| c.len()).sum();
        if total < 2 * s {
            continue;
        }
        // subset sum over component sizes: find a left side with size in [s, total - s]
        let mut reach: Vec<Option<(usize, usize)>> = alloc::vec![None; total + 1];
        reach[0] = Some((usize::MAX, 0));
        for (i, comp) in comps.iter().enumerate() {
            let sz = comp.len();
            for t in (sz..=total).rev() {
                if reach[t].is_none() && reach[t - sz].is_some() {
                    reach[t] = Some((i, t - sz));
                }
            }
        }
        if let Some(target) = (s..=total - s).find(|&t| reach[t].is_some()) {
            let mut left = VertexSet::new();
            let mut t = target;
            while t > 0 {
                let (i, prev) = reach[t].unwrap();
                left |= comps[i];
                t = prev;
            }
            let witness = Separation {
                left: left | sep,
                right: all - left,
            };
            debug_assert!(witness.is_valid(g));
            return Ok(Unbreakability::Witness(witness));
        }
    }
    Ok(Unbreakability::Unbreakable)
}
