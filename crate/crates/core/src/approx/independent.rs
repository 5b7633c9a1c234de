use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use crate::bitset::VertexSet;
use crate::decomposition::{h_tree_decomposition_verify, HTreeDecomposition, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::{components_within, neighborhood_adj, torso_adj, Graph, Weight};
use crate::hclass::HClass;
use crate::modulator::{verify_planar_modulator, PlanarModulator};
use crate::planarity::{bfs_layers_within, radial_decomposition};

/// Largest bag the independent-set DP enumerates subsets of.
pub const IS_BAG_CEILING: usize = 24;

/// Maximum independent set from a verified tree H-decomposition: subsets of
/// each bag are combined bottom-up, and every leaf component contributes
/// the class solver's answer on the part not adjacent to the chosen bag
/// vertices.
pub fn treedec_is_dp(g: &Graph, htd: &HTreeDecomposition, h: &HClass) -> Result<VertexSet> {
    if let Err(f) = h_tree_decomposition_verify(g, h, htd)? {
        return Err(Error::InvalidCertificate(alloc::format!("tree H-decomposition: {f:?}")));
    }
    independent_set_dp(g.adjacency(), g.vertices(), &htd.base, &htd.leaf_components, h)
}

/// The DP over `adj[verts]`; `base` must decompose a supergraph of the
/// torso of `verts` minus the leaves on the same vertices.
pub(super) fn independent_set_dp(
    adj: &[VertexSet],
    verts: VertexSet,
    base: &TreeDecomposition,
    leaves: &[VertexSet],
    h: &HClass,
) -> Result<VertexSet> {
    let solver = match (h.independent_set_solver, leaves.is_empty()) {
        (Some(s), _) => Some(s),
        (None, true) => None,
        (None, false) => {
            return Err(Error::MissingSolver {
                class: h.name.clone(),
                solver: "independent set",
            })
        }
    };
    let single;
    let base = if base.bags.is_empty() {
        single = TreeDecomposition::single(VertexSet::new());
        &single
    } else {
        base
    };
    if let Some(b) = base.bags.iter().find(|b| b.len() > IS_BAG_CEILING) {
        return Err(Error::CeilingExceeded {
            routine: "independent set DP",
            size: b.len(),
            ceiling: IS_BAG_CEILING,
        });
    }
    let nodes = base.bags.len();
    let mut hung: Vec<Vec<VertexSet>> = alloc::vec![Vec::new(); nodes];
    for &c in leaves {
        let nb = neighborhood_adj(adj, c) & verts;
        let t = base
            .bags
            .iter()
            .position(|b| nb.is_subset(b))
            .ok_or_else(|| Error::InvalidCertificate(alloc::format!("no bag holds N({c:?})")))?;
        hung[t].push(c);
    }

    // root at 0; parents before children in `order`
    let mut parent = alloc::vec![usize::MAX; nodes];
    let mut order = alloc::vec![0];
    parent[0] = 0;
    let mut i = 0;
    while i < order.len() {
        let t = order[i];
        for s in base.neighbors(t) {
            if parent[s] == usize::MAX {
                parent[s] = t;
                order.push(s);
            }
        }
        i += 1;
    }
    let mut children: Vec<Vec<usize>> = alloc::vec![Vec::new(); nodes];
    for &t in &order[1..] {
        children[parent[t]].push(t);
    }

    let mut leaf_memo: BTreeMap<(VertexSet, VertexSet), VertexSet> = BTreeMap::new();
    let mut leaf_best = |c: VertexSet, chosen: VertexSet| -> Result<VertexSet> {
        let blocked = chosen & neighborhood_adj(adj, c);
        if let Some(s) = leaf_memo.get(&(c, blocked)) {
            return Ok(*s);
        }
        let mut free = c;
        for v in blocked {
            free -= adj[v];
        }
        let (sub, map) = Graph::from_parts(adj.to_vec(), BTreeMap::new()).induced(free);
        let local = (solver.expect("leaves need a solver"))(&sub)?;
        let s: VertexSet = local.iter().map(|v| map[v]).collect();
        leaf_memo.insert((c, blocked), s);
        Ok(s)
    };

    // per child: best value of its subtree for each trace on the adhesion,
    // with the child's bag choice
    let mut up: Vec<BTreeMap<VertexSet, (usize, VertexSet)>> = alloc::vec![BTreeMap::new(); nodes];
    let mut root_table: Vec<(VertexSet, usize)> = Vec::new();
    for &t in order.iter().rev() {
        let bag = base.bags[t];
        let mut table = Vec::new();
        for chosen in independent_subsets(adj, bag) {
            let mut value = chosen.len();
            for &c in &children[t] {
                let adhesion = bag & base.bags[c];
                value += up[c][&(chosen & adhesion)].0;
            }
            for &c in &hung[t] {
                value += leaf_best(c, chosen)?.len();
            }
            table.push((chosen, value));
        }
        if t == 0 {
            root_table = table;
        } else {
            let adhesion = bag & base.bags[parent[t]];
            let mut best: BTreeMap<VertexSet, (usize, VertexSet)> = BTreeMap::new();
            for (chosen, value) in table {
                let trace = chosen & adhesion;
                let v = value - trace.len();
                if best.get(&trace).map_or(true, |&(b, _)| v > b) {
                    best.insert(trace, (v, chosen));
                }
            }
            up[t] = best;
        }
    }

    let (root_choice, _) = root_table
        .iter()
        .copied()
        .max_by_key(|&(s, v)| (v, core::cmp::Reverse(s)))
        .expect("the empty set is always a choice");
    let mut result = VertexSet::new();
    let mut stack = alloc::vec![(0usize, root_choice)];
    while let Some((t, chosen)) = stack.pop() {
        result |= chosen;
        for &c in &hung[t] {
            result |= leaf_best(c, chosen)?;
        }
        for &c in &children[t] {
            let adhesion = base.bags[t] & base.bags[c];
            stack.push((c, up[c][&(chosen & adhesion)].1));
        }
    }
    Ok(result)
}

/// Independent subsets of `bag`, the empty set first.
fn independent_subsets(adj: &[VertexSet], bag: VertexSet) -> Vec<VertexSet> {
    fn go(adj: &[VertexSet], rest: &[usize], cur: VertexSet, out: &mut Vec<VertexSet>) {
        let Some((&v, tail)) = rest.split_first() else {
            out.push(cur);
            return;
        };
        go(adj, tail, cur, out);
        if !adj[v].intersects(&cur) {
            let mut with = cur;
            with.insert(v);
            go(adj, tail, with, out);
        }
    }
    let mut out = Vec::new();
    go(adj, &bag.to_vec(), VertexSet::new(), &mut out);
    out
}

/// One run of the layered approximation.
#[derive(Clone, Debug)]
pub struct BakerRun {
    pub epsilon: Weight,
    /// Smallest `k` with `2/k <= epsilon`.
    pub k: usize,
    /// Breadth-first layers of the torso of the modulator.
    pub layers: Vec<VertexSet>,
    /// `strata[i]`: the layers with index `i` modulo `k`.
    pub strata: Vec<VertexSet>,
    /// Size of the optimum found after deleting each stratum.
    pub sizes: Vec<usize>,
    pub chosen: usize,
    pub result: VertexSet,
}

/// Independent set of size at least `(1 - epsilon) · α(g)`.
///
/// The torso of the modulator is layered by distance from its least vertex
/// (each torso component from its own least vertex). For each residue `i`
/// modulo `k`, the layers in that class are deleted together with the
/// components of `g - x` that see them; what is left has a tree
/// H-decomposition of width `O(k)`, built per torso component by the radial
/// construction with the lower layers contracted, and is solved exactly.
/// The best of the `k` answers is returned.
pub fn baker_independent_set(g: &Graph, h: &HClass, x: &PlanarModulator, epsilon: &Weight) -> Result<BakerRun> {
    if !epsilon.is_positive() || *epsilon >= Weight::one() {
        return Err(Error::InvalidParameter(alloc::format!(
            "epsilon must lie strictly between 0 and 1, got {epsilon}"
        )));
    }
    let Some(m) = verify_planar_modulator(g, h, x.x)?.modulator() else {
        return Err(Error::InvalidCertificate("not a planar modulator for this class".into()));
    };
    let two_over = Weight::from_integer(BigInt::from(2)) / epsilon;
    let k = two_over
        .ceil()
        .to_integer()
        .to_usize()
        .ok_or_else(|| Error::InvalidParameter("epsilon too small".into()))?;
    let adj = g.adjacency();
    let xs = m.x;
    let t = torso_adj(adj, xs);

    let mut layer_of = alloc::vec![usize::MAX; g.n()];
    let mut root_of = alloc::vec![usize::MAX; g.n()];
    let mut layers: Vec<VertexSet> = Vec::new();
    for comp in components_within(&t, xs) {
        let root = comp.first().expect("non-empty");
        for (i, l) in bfs_layers_within(&t, comp, root).layers.into_iter().enumerate() {
            if layers.len() <= i {
                layers.push(VertexSet::new());
            }
            layers[i] |= l;
            for v in l {
                layer_of[v] = i;
                root_of[v] = root;
            }
        }
    }
    for &c in &m.components {
        let idx: Vec<usize> = neighborhood_adj(adj, c).iter().map(|v| layer_of[v]).collect();
        if let (Some(lo), Some(hi)) = (idx.iter().min(), idx.iter().max()) {
            if hi - lo > 1 {
                return Err(Error::ContractBreach(alloc::format!(
                    "component {c:?} sees layers {lo} to {hi}"
                )));
            }
        }
    }

    let strata: Vec<VertexSet> = (0..k)
        .map(|i| xs.iter().filter(|&v| layer_of[v] % k == i).collect())
        .collect();
    let mut sizes = Vec::with_capacity(k);
    let mut best: Option<(usize, VertexSet)> = None;
    let mut empty_stratum_answer: Option<VertexSet> = None;
    for (i, &s) in strata.iter().enumerate() {
        let answer = match (s.is_empty(), empty_stratum_answer) {
            (true, Some(a)) => a,
            _ => {
                let a = solve_without_stratum(adj, &t, xs, &m.components, s, &layer_of, &root_of, h)?;
                if s.is_empty() {
                    empty_stratum_answer = Some(a);
                }
                a
            }
        };
        if let Some((u, v)) = first_edge_inside(adj, answer) {
            return Err(Error::ContractBreach(alloc::format!("stratum {i} answer holds the edge {u}-{v}")));
        }
        sizes.push(answer.len());
        if best.map_or(true, |(_, b)| answer.len() > b.len()) {
            best = Some((i, answer));
        }
    }
    let (chosen, result) = best.expect("k >= 1");
    Ok(BakerRun {
        epsilon: epsilon.clone(),
        k,
        layers,
        strata,
        sizes,
        chosen,
        result,
    })
}

#[allow(clippy::too_many_arguments)]
fn solve_without_stratum(
    adj: &[VertexSet],
    t: &[VertexSet],
    xs: VertexSet,
    components: &[VertexSet],
    stratum: VertexSet,
    layer_of: &[usize],
    root_of: &[usize],
    h: &HClass,
) -> Result<VertexSet> {
    let xi = xs - stratum;
    let kept: Vec<VertexSet> = components
        .iter()
        .copied()
        .filter(|&c| neighborhood_adj(adj, c).is_subset(&xi))
        .collect();
    let verts = kept.iter().fold(xi, |a, &c| a | c);
    let sub: Vec<VertexSet> = adj
        .iter()
        .enumerate()
        .map(|(v, &a)| if verts.contains(v) { a & verts } else { VertexSet::new() })
        .collect();

    let mut td = TreeDecomposition::default();
    for band in components_within(t, xi) {
        let lowest = band.iter().map(|v| layer_of[v]).min().expect("non-empty");
        let root = root_of[band.first().expect("non-empty")];
        let below: VertexSet = xs
            .iter()
            .filter(|&v| root_of[v] == root && layer_of[v] < lowest)
            .collect();
        let radial = radial_decomposition(t, band, root, below)?;
        let greedy = TreeDecomposition::min_degree(t, band);
        td.graft(if greedy.width() <= radial.width() { greedy } else { radial }, 0);
    }
    independent_set_dp(&sub, verts, &td, &kept, h)
}

pub(super) fn first_edge_inside(adj: &[VertexSet], s: VertexSet) -> Option<(usize, usize)> {
    s.iter().find_map(|u| (adj[u] & s).first().map(|v| (u, v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::path;
    use num_traits::Zero;

    #[test]
    fn path_decomposition_of_p4() {
        let g = path(4);
        let base = TreeDecomposition {
            bags: alloc::vec![
                [0, 1].into_iter().collect(),
                [1, 2].into_iter().collect(),
                [2, 3].into_iter().collect()
            ],
            edges: alloc::vec![(0, 1), (1, 2)],
        };
        let htd = crate::decomposition::h_tree_decomposition(&g, g.vertices(), base).unwrap();
        let h = crate::hclass::builtin("empty").unwrap();
        assert_eq!(treedec_is_dp(&g, &htd, &h).unwrap().len(), 2);
    }

    #[test]
    fn zero_epsilon_is_rejected() {
        let g = path(2);
        let h = crate::hclass::builtin("empty").unwrap();
        let m = verify_planar_modulator(&g, &h, g.vertices()).unwrap().modulator().unwrap();
        assert!(baker_independent_set(&g, &h, &m, &Weight::zero()).is_err());
        assert!(baker_independent_set(&g, &h, &m, &Weight::one()).is_err());
    }
}
