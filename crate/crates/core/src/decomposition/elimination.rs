use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cell::RefCell;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{components_within, torso_adj, Graph};
use crate::hclass::{HClass, Membership};
use crate::modulator::ModulatorSearch;
use crate::planarity::is_planar_adj;

/// Default vertex ceiling of [`planar_treedepth_exact`].
pub const PTD_CEILING: usize = 14;

/// Successive planar layers `X_1, ..., X_k`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct EliminationSequence {
    pub layers: Vec<VertexSet>,
}

/// Why an elimination sequence was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EliminationFault {
    ForeignVertex(usize),
    OverlappingLayers(usize),
    /// The torso of this layer is not planar.
    NonPlanarLayer(usize),
    /// A residual component outside the class.
    ResidualOutsideClass(VertexSet),
}

impl EliminationSequence {
    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn union(&self) -> VertexSet {
        self.layers.iter().fold(VertexSet::new(), |a, &l| a | l)
    }
}

/// Checks `seq` level by level: with `G_1 = G` and `G_{i+1} = G_i - X_i`,
/// the torso of `X_i` in `G_i` must be planar, and every component left
/// after the last layer must lie in `h`.
///
/// The torso of a disjoint union is the union of the per-component torsos,
/// so checking `torso(G_i, X_i)` once covers every component of `G_i`.
pub fn verify_elimination_sequence(
    g: &Graph,
    h: &HClass,
    seq: &EliminationSequence,
) -> Result<core::result::Result<(), EliminationFault>> {
    let adj = g.adjacency();
    let mut rest = g.vertices();
    let mut seen = VertexSet::new();
    for (i, &layer) in seq.layers.iter().enumerate() {
        if let Some(v) = (layer - g.vertices()).first() {
            return Ok(Err(EliminationFault::ForeignVertex(v)));
        }
        if layer.intersects(&seen) {
            return Ok(Err(EliminationFault::OverlappingLayers(i)));
        }
        seen |= layer;
        let t = restricted_torso(adj, rest, layer);
        if !is_planar_adj(&t, layer) {
            return Ok(Err(EliminationFault::NonPlanarLayer(i)));
        }
        rest -= layer;
    }
    for c in components_within(adj, rest) {
        if !h.contains_within(adj, c)? {
            return Ok(Err(EliminationFault::ResidualOutsideClass(c)));
        }
    }
    Ok(Ok(()))
}

/// Torso of `x` in `g[within]`.
pub(crate) fn restricted_torso(adj: &[VertexSet], within: VertexSet, x: VertexSet) -> Vec<VertexSet> {
    let sub: Vec<VertexSet> = adj
        .iter()
        .enumerate()
        .map(|(v, &a)| if within.contains(v) { a & within } else { VertexSet::new() })
        .collect();
    torso_adj(&sub, x)
}

/// Members are the graphs whose every component has H-planar treedepth at
/// most `level`. Answers are shared across levels through one memo.
struct DepthClass<'a> {
    adj: &'a [VertexSet],
    h: &'a HClass,
    level: usize,
    memo: &'a RefCell<BTreeMap<(usize, VertexSet), bool>>,
}

impl DepthClass<'_> {
    fn at(&self, level: usize) -> DepthClass<'_> {
        DepthClass {
            adj: self.adj,
            h: self.h,
            level,
            memo: self.memo,
        }
    }

    fn connected_at_most(&self, c: VertexSet) -> Result<bool> {
        if self.h.contains_within(self.adj, c)? {
            return Ok(true);
        }
        if self.level == 0 {
            return Ok(false);
        }
        if let Some(&b) = self.memo.borrow().get(&(self.level, c)) {
            return Ok(b);
        }
        // depth is monotone in the level, so a lower-level success settles it
        let known_lower = self.memo.borrow().get(&(self.level - 1, c)) == Some(&true);
        let ok = known_lower || {
            let below = self.at(self.level - 1);
            let mut search = ModulatorSearch::over(self.adj, &below);
            search.find(c, VertexSet::new(), VertexSet::new(), usize::MAX)?.is_some()
        };
        self.memo.borrow_mut().insert((self.level, c), ok);
        Ok(ok)
    }
}

impl Membership for DepthClass<'_> {
    fn contains_within(&self, _adj: &[VertexSet], verts: VertexSet) -> Result<bool> {
        for c in components_within(self.adj, verts) {
            if !self.connected_at_most(c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn extendable_within(&self, adj: &[VertexSet], verts: VertexSet) -> Result<bool> {
        // the depth classes of a hereditary class are hereditary
        if self.h.hereditary {
            self.contains_within(adj, verts)
        } else {
            Ok(true)
        }
    }
}

/// Minimum H-planar treedepth of `g` together with a certifying sequence,
/// or `None` if it exceeds `k_max`. Use the `empty` class for plain planar
/// treedepth.
///
/// Depth `j` of a connected graph is decided as the existence of a planar
/// modulator whose components have depth at most `j - 1`, using the
/// modulator search with that depth class as target.
pub fn planar_treedepth_exact(g: &Graph, h: &HClass, k_max: usize) -> Result<Option<(usize, EliminationSequence)>> {
    planar_treedepth_exact_with(g, h, k_max, PTD_CEILING)
}

pub fn planar_treedepth_exact_with(
    g: &Graph,
    h: &HClass,
    k_max: usize,
    ceiling: usize,
) -> Result<Option<(usize, EliminationSequence)>> {
    if g.n() > ceiling {
        return Err(Error::CeilingExceeded {
            routine: "planar_treedepth_exact",
            size: g.n(),
            ceiling,
        });
    }
    let adj = g.adjacency();
    let memo = RefCell::new(BTreeMap::new());
    let class = DepthClass {
        adj,
        h,
        level: 0,
        memo: &memo,
    };
    let depth_of = |c: VertexSet| -> Result<Option<usize>> {
        for j in 0..=k_max {
            if class.at(j).connected_at_most(c)? {
                return Ok(Some(j));
            }
        }
        Ok(None)
    };

    let mut layers: Vec<VertexSet> = Vec::new();
    let mut stack: Vec<(VertexSet, usize)> = Vec::new();
    let mut k = 0;
    for c in components_within(adj, g.vertices()) {
        match depth_of(c)? {
            Some(d) => k = k.max(d),
            None => return Ok(None),
        }
        stack.push((c, 0));
    }
    while let Some((c, at)) = stack.pop() {
        let d = depth_of(c)?.expect("subcomponents are no deeper");
        if d == 0 {
            continue;
        }
        let below = class.at(d - 1);
        let mut search = ModulatorSearch::over(adj, &below);
        let x = search
            .find(c, VertexSet::new(), VertexSet::new(), usize::MAX)?
            .ok_or_else(|| Error::ContractBreach("depth witness vanished".into()))?;
        if layers.len() <= at {
            layers.resize(at + 1, VertexSet::new());
        }
        layers[at] |= x;
        for sub in components_within(adj, c - x) {
            stack.push((sub, at + 1));
        }
    }
    let seq = EliminationSequence { layers };
    debug_assert!(seq.depth() <= k);
    Ok(Some((k, seq)))
}

/// Treedepth by memoized recursion over connected vertex sets; returns the
/// depth and an elimination forest as a parent array (`None` for roots and
/// for vertices outside the graph).
pub fn treedepth_exact(g: &Graph) -> Result<(usize, Vec<Option<usize>>)> {
    if g.n() > PTD_CEILING + 4 {
        return Err(Error::CeilingExceeded {
            routine: "treedepth_exact",
            size: g.n(),
            ceiling: PTD_CEILING + 4,
        });
    }
    let adj = g.adjacency();
    let mut memo: BTreeMap<VertexSet, (usize, usize)> = BTreeMap::new();
    fn td(adj: &[VertexSet], c: VertexSet, memo: &mut BTreeMap<VertexSet, (usize, usize)>) -> usize {
        if c.len() <= 1 {
            return c.len();
        }
        if let Some(&(d, _)) = memo.get(&c) {
            return d;
        }
        let mut best = (usize::MAX, 0);
        for v in c {
            let mut rest = c;
            rest.remove(v);
            let mut d = 0;
            for sub in components_within(adj, rest) {
                d = d.max(td(adj, sub, memo));
                if d + 1 >= best.0 {
                    break;
                }
            }
            if d + 1 < best.0 {
                best = (d + 1, v);
            }
        }
        memo.insert(c, best);
        best.0
    }
    let mut parent = alloc::vec![None; g.n()];
    let mut depth = 0;
    let mut stack: Vec<(VertexSet, Option<usize>)> =
        components_within(adj, g.vertices()).into_iter().map(|c| (c, None)).collect();
    for &(c, _) in &stack {
        depth = depth.max(td(adj, c, &mut memo));
    }
    while let Some((c, up)) = stack.pop() {
        let root = if c.len() == 1 {
            c.first().unwrap()
        } else {
            td(adj, c, &mut memo);
            memo[&c].1
        };
        parent[root] = up;
        let mut rest = c;
        rest.remove(root);
        for sub in components_within(adj, rest) {
            stack.push((sub, Some(root)));
        }
    }
    Ok((depth, parent))
}

/// Checks that `parent` is a rooted forest on `V(g)` in which every edge
/// joins an ancestor and a descendant, and returns its depth.
pub fn verify_elimination_forest(g: &Graph, parent: &[Option<usize>]) -> Option<usize> {
    let n = g.n();
    if parent.len() != n {
        return None;
    }
    let mut depth = alloc::vec![0usize; n];
    for v in 0..n {
        let mut d = 1;
        let mut u = v;
        while let Some(p) = parent[u] {
            if p >= n || d > n {
                return None;
            }
            u = p;
            d += 1;
        }
        depth[v] = d;
    }
    let ancestors = |v: usize| {
        let mut s = VertexSet::new();
        let mut u = v;
        while let Some(p) = parent[u] {
            s.insert(p);
            u = p;
        }
        s
    };
    for (u, v) in g.edges() {
        if !ancestors(u).contains(v) && !ancestors(v).contains(u) {
            return None;
        }
    }
    Some(depth.into_iter().max().unwrap_or(0))
}
