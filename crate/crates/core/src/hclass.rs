//! Target classes `H`: membership, structural flags, sub-solvers and the
//! size restriction `H^(k)`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::exact::{chromatic_coloring, complement_adj, has_odd_hole, max_independent_set};
use crate::graph::{components_within, Graph, Weight};
use crate::matching::{fkt_pmm, pmm_bruteforce};
use crate::planarity::{is_planar_adj, Coloring};

/// Membership test on the subgraph induced by a vertex set.
pub type Predicate = fn(&[VertexSet], VertexSet) -> bool;
pub type ChromaticSolver = fn(&Graph) -> Result<Coloring>;
pub type IndependentSetSolver = fn(&Graph) -> Result<VertexSet>;
pub type PmmSolver = fn(&Graph) -> Result<Weight>;

/// Largest graph the odd-hole search behind `perfect` is run on.
pub const PERFECT_CEILING: usize = 18;
/// Largest graph the generic exact chromatic solver is run on.
pub const CHROMATIC_CEILING: usize = 24;
/// Largest order [`min_forbidden_subgraph`] enumerates.
pub const FORBIDDEN_CEILING: usize = 7;

pub const BUILTIN_NAMES: [&str; 10] = [
    "edgeless",
    "forests",
    "bipartite",
    "planar",
    "chordal",
    "cluster",
    "complete_K4_only",
    "all_graphs",
    "perfect",
    "empty",
];

/// What the exhaustive searches need to know about a target class.
pub trait Membership {
    /// Whether `g[verts]` belongs to the class.
    fn contains_within(&self, adj: &[VertexSet], verts: VertexSet) -> Result<bool>;
    /// False only if `g[verts]` is an induced subgraph of no member.
    fn extendable_within(&self, adj: &[VertexSet], verts: VertexSet) -> Result<bool>;
    fn is_all_graphs(&self) -> bool {
        false
    }
}

impl Membership for HClass {
    fn contains_within(&self, adj: &[VertexSet], verts: VertexSet) -> Result<bool> {
        HClass::contains_within(self, adj, verts)
    }

    fn extendable_within(&self, adj: &[VertexSet], verts: VertexSet) -> Result<bool> {
        Ok(HClass::extendable_within(self, adj, verts))
    }

    fn is_all_graphs(&self) -> bool {
        HClass::is_all_graphs(self)
    }
}

/// A graph class together with what the algorithms are allowed to assume
/// about it.
#[derive(Clone)]
pub struct HClass {
    pub name: String,
    membership: Predicate,
    /// Necessary condition for being an induced subgraph of a member; used
    /// to prune partially built components.
    extendable: Predicate,
    pub hereditary: bool,
    pub union_closed: bool,
    pub size_limit: Option<usize>,
    membership_ceiling: Option<usize>,
    pub chromatic_solver: Option<ChromaticSolver>,
    pub independent_set_solver: Option<IndependentSetSolver>,
    pub pmm_solver: Option<PmmSolver>,
}

impl fmt::Debug for HClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HClass")
            .field("name", &self.name)
            .field("hereditary", &self.hereditary)
            .field("union_closed", &self.union_closed)
            .field("size_limit", &self.size_limit)
            .finish()
    }
}

impl HClass {
    /// Whether `g[verts]` belongs to the class.
    pub fn contains_within(&self, adj: &[VertexSet], verts: VertexSet) -> Result<bool> {
        if self.size_limit.is_some_and(|k| verts.len() > k) {
            return Ok(false);
        }
        if let Some(c) = self.membership_ceiling {
            if verts.len() > c {
                return Err(Error::CeilingExceeded {
                    routine: "class membership",
                    size: verts.len(),
                    ceiling: c,
                });
            }
        }
        Ok((self.membership)(adj, verts))
    }

    pub fn contains(&self, g: &Graph) -> Result<bool> {
        self.contains_within(g.adjacency(), g.vertices())
    }

    /// False only if no member has `g[verts]` as an induced subgraph.
    pub fn extendable_within(&self, adj: &[VertexSet], verts: VertexSet) -> bool {
        if self.size_limit.is_some_and(|k| verts.len() > k) {
            return false;
        }
        if self.membership_ceiling.is_some_and(|c| verts.len() > c) {
            return true;
        }
        (self.extendable)(adj, verts)
    }

    /// True for the unrestricted class of all graphs, where the empty
    /// modulator always works.
    pub fn is_all_graphs(&self) -> bool {
        self.name == "all_graphs" && self.size_limit.is_none()
    }

    pub fn restrict_to_size(&self, k: usize) -> SizeRestrictedClass {
        SizeRestrictedClass { base: self.clone(), k }
    }

    pub fn chromatic(&self, g: &Graph) -> Result<Coloring> {
        let solve = self.chromatic_solver.ok_or_else(|| self.missing("chromatic"))?;
        solve(g)
    }

    pub fn independent_set(&self, g: &Graph) -> Result<VertexSet> {
        let solve = self.independent_set_solver.ok_or_else(|| self.missing("independent set"))?;
        solve(g)
    }

    pub fn pmm(&self, g: &Graph) -> Result<Weight> {
        let solve = self.pmm_solver.ok_or_else(|| self.missing("pmm"))?;
        solve(g)
    }

    fn missing(&self, solver: &'static str) -> Error {
        Error::MissingSolver {
            class: self.name.clone(),
            solver,
        }
    }
}

/// `H^(k)`: the members of `base` with at most `k` vertices.
#[derive(Clone, Debug)]
pub struct SizeRestrictedClass {
    pub base: HClass,
    pub k: usize,
}

impl SizeRestrictedClass {
    pub fn contains(&self, g: &Graph) -> Result<bool> {
        Ok(g.n() <= self.k && self.base.contains(g)?)
    }

    pub fn into_class(self) -> HClass {
        let mut c = self.base;
        c.name = alloc::format!("{}^({})", c.name, self.k);
        c.size_limit = Some(c.size_limit.map_or(self.k, |l| l.min(self.k)));
        // a union of two members may exceed the size bound
        c.union_closed = c.union_closed && self.k == 0;
        c
    }
}

impl From<SizeRestrictedClass> for HClass {
    fn from(r: SizeRestrictedClass) -> HClass {
        r.into_class()
    }
}

pub fn restrict_to_size(h: &HClass, k: usize) -> SizeRestrictedClass {
    h.restrict_to_size(k)
}

/// Looks up a builtin class by name.
pub fn builtin(name: &str) -> Result<HClass> {
    let base = HClass {
        name: name.to_string(),
        membership: |_, _| true,
        extendable: |_, _| true,
        hereditary: true,
        union_closed: true,
        size_limit: None,
        membership_ceiling: None,
        chromatic_solver: Some(exact_chromatic),
        independent_set_solver: Some(exact_independent_set),
        pmm_solver: Some(pmm_bruteforce),
    };
    let class = match name {
        "edgeless" => HClass {
            membership: is_edgeless,
            extendable: is_edgeless,
            chromatic_solver: Some(|g| Ok(Coloring::normalized(alloc::vec![0; g.n()]))),
            independent_set_solver: Some(|g| Ok(g.vertices())),
            ..base
        },
        "forests" => HClass {
            membership: is_forest,
            extendable: is_forest,
            chromatic_solver: Some(two_coloring),
            independent_set_solver: Some(chordal_independent_set),
            ..base
        },
        "bipartite" => HClass {
            membership: is_bipartite,
            extendable: is_bipartite,
            chromatic_solver: Some(two_coloring),
            ..base
        },
        "planar" => HClass {
            membership: is_planar_adj,
            extendable: is_planar_adj,
            pmm_solver: Some(fkt_pmm),
            ..base
        },
        "chordal" => HClass {
            membership: is_chordal,
            extendable: is_chordal,
            chromatic_solver: Some(chordal_coloring),
            independent_set_solver: Some(chordal_independent_set),
            ..base
        },
        "cluster" => HClass {
            membership: is_cluster,
            extendable: is_cluster,
            chromatic_solver: Some(chordal_coloring),
            independent_set_solver: Some(chordal_independent_set),
            ..base
        },
        "complete_K4_only" => HClass {
            membership: |adj, s| s.len() == 4 && is_clique(adj, s),
            extendable: |adj, s| s.len() <= 4 && is_clique(adj, s),
            hereditary: false,
            union_closed: false,
            chromatic_solver: Some(chordal_coloring),
            independent_set_solver: Some(chordal_independent_set),
            ..base
        },
        "all_graphs" => base,
        "perfect" => HClass {
            membership: is_perfect,
            extendable: is_perfect,
            membership_ceiling: Some(PERFECT_CEILING),
            ..base
        },
        "empty" => HClass {
            membership: |_, s| s.is_empty(),
            extendable: |_, s| s.is_empty(),
            ..base
        },
        _ => return Err(Error::UnknownClass(name.to_string())),
    };
    Ok(class)
}

fn is_edgeless(adj: &[VertexSet], s: VertexSet) -> bool {
    s.iter().all(|v| !adj[v].intersects(&s))
}

fn edge_count(adj: &[VertexSet], s: VertexSet) -> usize {
    s.iter().map(|v| (adj[v] & s).len()).sum::<usize>() / 2
}

fn is_forest(adj: &[VertexSet], s: VertexSet) -> bool {
    edge_count(adj, s) + components_within(adj, s).len() == s.len()
}

fn is_clique(adj: &[VertexSet], s: VertexSet) -> bool {
    s.iter().all(|v| (adj[v] & s).len() + 1 == s.len())
}

fn is_cluster(adj: &[VertexSet], s: VertexSet) -> bool {
    components_within(adj, s).into_iter().all(|c| is_clique(adj, c))
}

/// Proper 2-coloring of `g[s]` (colors outside `s` are 0), if bipartite.
fn bipartition(adj: &[VertexSet], s: VertexSet) -> Option<Vec<usize>> {
    let mut color = alloc::vec![usize::MAX; adj.len()];
    for start in s {
        if color[start] != usize::MAX {
            continue;
        }
        color[start] = 0;
        let mut stack = alloc::vec![start];
        while let Some(v) = stack.pop() {
            for u in adj[v] & s {
                if color[u] == usize::MAX {
                    color[u] = 1 - color[v];
                    stack.push(u);
                } else if color[u] == color[v] {
                    return None;
                }
            }
        }
    }
    for c in color.iter_mut() {
        if *c == usize::MAX {
            *c = 0;
        }
    }
    Some(color)
}

fn is_bipartite(adj: &[VertexSet], s: VertexSet) -> bool {
    bipartition(adj, s).is_some()
}

/// Perfect elimination order of `g[s]` via maximum cardinality search, if
/// `g[s]` is chordal.
fn perfect_elimination_order(adj: &[VertexSet], s: VertexSet) -> Option<Vec<usize>> {
    let mut weight = alloc::vec![0usize; adj.len()];
    let mut left = s;
    let mut visit = Vec::with_capacity(s.len());
    while let Some(v) = left.iter().max_by_key(|&v| (weight[v], core::cmp::Reverse(v))) {
        left.remove(v);
        visit.push(v);
        for u in adj[v] & left {
            weight[u] += 1;
        }
    }
    visit.reverse();
    let mut later = s;
    for &v in &visit {
        later.remove(v);
        let nb = adj[v] & later;
        if !is_clique(adj, nb) {
            return None;
        }
    }
    Some(visit)
}

fn is_chordal(adj: &[VertexSet], s: VertexSet) -> bool {
    perfect_elimination_order(adj, s).is_some()
}

fn is_perfect(adj: &[VertexSet], s: VertexSet) -> bool {
    !has_odd_hole(adj, s) && !has_odd_hole(&complement_adj(adj, s), s)
}

fn two_coloring(g: &Graph) -> Result<Coloring> {
    bipartition(g.adjacency(), g.vertices())
        .map(Coloring::normalized)
        .ok_or_else(|| Error::InvalidParameter("graph is not bipartite".into()))
}

/// Greedy coloring along the reverse of a perfect elimination order, which
/// is optimal on chordal graphs.
fn chordal_coloring(g: &Graph) -> Result<Coloring> {
    let order = perfect_elimination_order(g.adjacency(), g.vertices())
        .ok_or_else(|| Error::InvalidParameter("graph is not chordal".into()))?;
    let mut color = alloc::vec![usize::MAX; g.n()];
    for &v in order.iter().rev() {
        let used: Vec<usize> = g.neighbors(v).iter().map(|u| color[u]).collect();
        color[v] = (0..).find(|c| !used.contains(c)).unwrap();
    }
    Ok(Coloring::normalized(color))
}

/// Greedy along a perfect elimination order (simplicial vertices first).
fn chordal_independent_set(g: &Graph) -> Result<VertexSet> {
    let order = perfect_elimination_order(g.adjacency(), g.vertices())
        .ok_or_else(|| Error::InvalidParameter("graph is not chordal".into()))?;
    let mut taken = VertexSet::new();
    for v in order {
        if !g.neighbors(v).intersects(&taken) {
            taken.insert(v);
        }
    }
    Ok(taken)
}

fn exact_chromatic(g: &Graph) -> Result<Coloring> {
    if g.n() > CHROMATIC_CEILING {
        return Err(Error::CeilingExceeded {
            routine: "exact chromatic number",
            size: g.n(),
            ceiling: CHROMATIC_CEILING,
        });
    }
    Ok(Coloring::normalized(chromatic_coloring(g.adjacency(), g.vertices())))
}

fn exact_independent_set(g: &Graph) -> Result<VertexSet> {
    Ok(max_independent_set(g.adjacency(), g.vertices()))
}

/// Smallest graph outside a hereditary class: fewest vertices, then fewest
/// edges, then least canonical code. `Ok(None)` means the class contains
/// every graph up to `ceiling` vertices and is the class of all graphs.
pub fn min_forbidden_subgraph(h: &HClass, ceiling: usize) -> Result<Option<Graph>> {
    if !h.hereditary {
        return Err(Error::InvalidParameter(alloc::format!("class {} is not hereditary", h.name)));
    }
    if ceiling > FORBIDDEN_CEILING {
        return Err(Error::CeilingExceeded {
            routine: "min_forbidden_subgraph",
            size: ceiling,
            ceiling: FORBIDDEN_CEILING,
        });
    }
    if h.is_all_graphs() {
        return Ok(None);
    }
    for n in 0..=ceiling {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let to_adj = |mask: u32| {
            let mut adj = alloc::vec![VertexSet::new(); n];
            for (b, &(i, j)) in pairs.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    adj[i].insert(j);
                    adj[j].insert(i);
                }
            }
            adj
        };
        let full = VertexSet::full(n);
        let mut masks: Vec<u32> = (0..1u32 << pairs.len()).collect();
        masks.sort_by_key(|m| m.count_ones());
        let mut best: Option<(u32, u32)> = None;
        for &mask in &masks {
            if let Some((bm, _)) = best {
                if mask.count_ones() > bm.count_ones() {
                    break;
                }
            }
            if h.contains_within(&to_adj(mask), full)? {
                continue;
            }
            let code = canonical_code(n, &pairs, mask);
            if best.map_or(true, |(_, c)| code < c) {
                best = Some((mask, code));
            }
        }
        if let Some((_, code)) = best {
            let edges: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|&(b, _)| code >> b & 1 == 1).map(|(_, &e)| e).collect();
            return Graph::from_edges(n, &edges).map(Some);
        }
    }
    Err(Error::Inconclusive(alloc::format!(
        "no graph outside {} with at most {} vertices",
        h.name,
        ceiling
    )))
}

/// Least edge mask over all relabelings.
fn canonical_code(n: usize, pairs: &[(usize, usize)], mask: u32) -> u32 {
    let index = |i: usize, j: usize| {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        pairs.iter().position(|&p| p == (a, b)).unwrap()
    };
    let edges: Vec<(usize, usize)> =
        pairs.iter().enumerate().filter(|&(b, _)| mask >> b & 1 == 1).map(|(_, &e)| e).collect();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = u32::MAX;
    // Heap's algorithm
    let mut c = alloc::vec![0usize; n];
    let mut eval = |perm: &[usize]| {
        let code = edges.iter().fold(0u32, |m, &(i, j)| m | 1 << index(perm[i], perm[j]));
        best = best.min(code);
    };
    eval(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            eval(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best
}
