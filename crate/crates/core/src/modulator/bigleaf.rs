use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::bitset::VertexSet;
use crate::decomposition::{planar_treedepth_exact, planar_width_at_most, treedepth_exact, treewidth_exact};
use crate::error::{Error, Result};
use crate::graph::{components_within, enumerate_separations_with_trivial, neighborhood_adj, subsets_up_to, torso, torso_adj, Graph};
use crate::hclass::{builtin, HClass};

use super::{splitter_family, verify_planar_modulator, PlanarModulator};

/// Largest set of vertices outside a big leaf that the searches enumerate
/// all subsets of.
const OUTSIDE_CEILING: usize = 20;

/// Planar H-modulator with a component of `g - S` of size at least `a`.
///
/// Every separation `(A, B)` of order at most four with `g[A∖B]` connected
/// and `|B∖A| < a` is tried, and with it every `S` with `A∩B ⊆ S ⊆ B`. On
/// `(a, 4)`-unbreakable graphs this finds a big-leaf modulator whenever one
/// exists: the big leaf is `A∖B` for `A∩B` its neighbourhood.
pub fn big_leaf_search(g: &Graph, h: &HClass, a: usize) -> Result<Option<PlanarModulator>> {
    if a == 0 || a > g.n() {
        return Ok(None);
    }
    let mut tried = BTreeSet::new();
    for sep in enumerate_separations_with_trivial(g, 4, a) {
        let base = sep.separator();
        let free = sep.right_only();
        for extra in subsets_up_to(free, free.len()) {
            let s = base | extra;
            if !tried.insert(s) {
                continue;
            }
            let Some(m) = verify_planar_modulator(g, h, s)?.modulator() else {
                continue;
            };
            if m.components.iter().any(|c| c.len() >= a) {
                return Ok(Some(m));
            }
        }
    }
    Ok(None)
}

/// A target class `G_k` for the torso of a modulator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TargetClass {
    /// Planar treewidth at most `k`.
    Ptw(usize),
    /// Planar treedepth at most `k`.
    Ptd(usize),
    Td(usize),
    Tw(usize),
    /// At most `k` vertices.
    Size(usize),
}

impl TargetClass {
    pub fn k(&self) -> usize {
        match *self {
            TargetClass::Ptw(k) | TargetClass::Ptd(k) | TargetClass::Td(k) | TargetClass::Tw(k) | TargetClass::Size(k) => k,
        }
    }

    /// Bound on the neighbourhood of a component beside a torso of the
    /// class: members have no `K_{k'+1}` minor.
    pub fn clique_bound(&self) -> usize {
        match *self {
            TargetClass::Ptw(k) => (k + 1).max(4),
            TargetClass::Tw(k) => k + 1,
            TargetClass::Ptd(k) => 4 * k,
            TargetClass::Td(k) | TargetClass::Size(k) => k,
        }
    }

    /// Whether `torso(g, x)` belongs to the class.
    pub fn contains_torso(&self, g: &Graph, x: VertexSet) -> Result<bool> {
        let k = self.k();
        if let TargetClass::Size(_) = self {
            return Ok(x.len() <= k);
        }
        if let TargetClass::Ptw(_) = self {
            let t = torso_adj(g.adjacency(), x);
            return Ok(planar_width_at_most(&t, x, k).is_some());
        }
        let (t, _) = torso(g, x).induced(x);
        Ok(match self {
            TargetClass::Ptd(_) => planar_treedepth_exact(&t, &builtin("empty")?, k)?.is_some(),
            TargetClass::Td(_) => treedepth_exact(&t)?.0 <= k,
            TargetClass::Tw(_) => treewidth_exact(&t)?.0 <= k as isize,
            TargetClass::Ptw(_) | TargetClass::Size(_) => unreachable!(),
        })
    }
}

/// A `G_k ▷ H` modulator: the torso lies in the target class and every
/// component of the rest in `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GhModulator {
    pub x: VertexSet,
    pub target: TargetClass,
    pub components: Vec<VertexSet>,
}

/// Checks the two conditions of a `G_k ▷ H` modulator.
pub fn is_gh_modulator(g: &Graph, h: &HClass, target: TargetClass, x: VertexSet) -> Result<bool> {
    if !x.is_subset(&g.vertices()) {
        return Ok(false);
    }
    for c in components_within(g.adjacency(), g.vertices() - x) {
        if !h.contains_within(g.adjacency(), c)? {
            return Ok(false);
        }
    }
    target.contains_torso(g, x)
}

/// Minimum `S ⊆ scope` with `|S| <= budget` such that `g[scope - S]` lies
/// in `h`, least in lexicographic order among those of minimum size.
pub fn h_deletion(adj: &[VertexSet], scope: VertexSet, h: &HClass, budget: usize) -> Result<Option<VertexSet>> {
    for s in subsets_up_to(scope, budget) {
        if h.contains_within(adj, scope - s)? {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// Big-leaf `G_k ▷ H` modulator search on `(a, k')`-unbreakable graphs,
/// with `k'` the clique bound of the target.
///
/// For each `U` of a splitter family separating up to `k'` vertices from up
/// to `a - 1` others: `Z_U` is the union of the components of `g - U`
/// outside `H`, `A_U = N(Z_U)`, `C_U` the unique component of `g - A_U`
/// with at least `a` vertices, and `S_U` a minimum H-deletion set of `C_U`
/// within the remaining budget. Every `Y ⊆ V - N[C_U]` then gives the
/// candidate `Y ∪ A_U ∪ S_U`. A returned modulator is always valid;
/// `None` means there is no big-leaf modulator, provided the
/// unbreakability assumption holds.
pub fn big_leaf_gh_search(g: &Graph, h: &HClass, target: TargetClass, a: usize) -> Result<Option<GhModulator>> {
    if !h.hereditary || !h.union_closed {
        return Err(Error::InvalidParameter(alloc::format!(
            "class {} must be hereditary and union-closed",
            h.name
        )));
    }
    if a == 0 || a > g.n() {
        return Ok(None);
    }
    let adj = g.adjacency();
    let all = g.vertices();
    let kp = target.clique_bound();
    let family = splitter_family(g.n(), kp, a - 1)?;
    let mut tried = BTreeSet::new();
    for &u in &family.sets {
        let mut z = VertexSet::new();
        for c in components_within(adj, all - u) {
            if !h.contains_within(adj, c)? {
                z |= c;
            }
        }
        let a_u = neighborhood_adj(adj, z);
        if a_u.len() > kp {
            continue;
        }
        let big: Vec<VertexSet> = components_within(adj, all - a_u).into_iter().filter(|c| c.len() >= a).collect();
        let [c_u] = big[..] else {
            continue;
        };
        let Some(s_u) = h_deletion(adj, c_u, h, kp - a_u.len())? else {
            continue;
        };
        let outside = all - c_u - neighborhood_adj(adj, c_u);
        if outside.len() > OUTSIDE_CEILING {
            return Err(Error::CeilingExceeded {
                routine: "big_leaf_gh_search",
                size: outside.len(),
                ceiling: OUTSIDE_CEILING,
            });
        }
        for y in subsets_up_to(outside, outside.len()) {
            let x = y | a_u | s_u;
            if !tried.insert(x) {
                continue;
            }
            if is_gh_modulator(g, h, target, x)? {
                return Ok(Some(GhModulator {
                    x,
                    target,
                    components: components_within(adj, all - x),
                }));
            }
        }
    }
    Ok(None)
}
