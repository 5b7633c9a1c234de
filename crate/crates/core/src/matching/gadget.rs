use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{Graph, Separation, Weight};
use crate::planarity::is_planar_adj;

use super::pmm_bruteforce;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Parity {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Subsets `γ` of a `k`-element boundary for which `|B| - |γ|` is even,
/// i.e. the exposures a side of parity `parity` can have.
pub fn feasible_exposures(k: usize, parity: Parity) -> Vec<VertexSet> {
    let want = match parity {
        Parity::Even => 0,
        Parity::Odd => 1,
    };
    (0u32..1 << k)
        .map(|m| (0..k).filter(|&i| m >> i & 1 == 1).collect::<VertexSet>())
        .filter(|g| g.len() % 2 == want)
        .collect()
}

/// Weighted planar graph standing in for one side of a separation of order
/// two or three. Boundary vertex `i` of the gadget is vertex `i` of
/// `graph`; the remaining vertices are internal.
///
/// A gadget encodes `p` when `pmm(graph - γ) = p_γ` for every feasible `γ`
/// (`γ` over boundary positions). Gluing it to the other side at the
/// boundary then preserves the matching count: both sum
/// `pmm(G[A] - (X∖γ)) · p_γ` over `γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchgateGadget {
    pub boundary: Vec<usize>,
    pub graph: Graph,
    pub parity: Parity,
}

impl MatchgateGadget {
    /// Count of the gadget with the boundary positions in `gamma` removed.
    pub fn exposed(&self, gamma: VertexSet) -> Result<Weight> {
        pmm_bruteforce(&self.graph.induced(self.graph.vertices() - gamma).0)
    }

    /// Checks the gadget against `p` by brute force, together with the
    /// structural requirements: planar, no edge between boundary vertices,
    /// and all boundary vertices on one face.
    pub fn encodes(&self, p: &BTreeMap<VertexSet, Weight>) -> Result<bool> {
        let k = self.boundary.len();
        let bd: VertexSet = self.boundary.iter().copied().collect();
        if bd != VertexSet::full(k) || Parity::of(self.graph.n()) != self.parity {
            return Ok(false);
        }
        if bd.iter().any(|v| self.graph.neighbors(v).intersects(&bd)) {
            return Ok(false);
        }
        // one common face iff an extra vertex seeing the boundary keeps it planar
        let n = self.graph.n();
        let mut adj = self.graph.adjacency().to_vec();
        adj.push(bd);
        for v in bd {
            adj[v].insert(n);
        }
        if !is_planar_adj(&adj, VertexSet::full(n + 1)) {
            return Ok(false);
        }
        for gamma in feasible_exposures(k, self.parity) {
            let want = p.get(&gamma).cloned().unwrap_or_else(Weight::zero);
            if self.exposed(gamma)? != want {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A gadget for a boundary of 2 or 3 vertices and a side of the given
/// parity, or `None` if the candidate fails validation (callers then
/// combine directly).
///
/// Boundary positions are `a = 0`, `b = 1`, `c = 2`; `p` must hold a value
/// for every feasible exposure. Zero weights drop their edge. Layouts:
///
/// * 2, even: path `a - u - v - b` weighted `p_∅, p_ab, 1`.
/// * 2, odd: path `a - u - b` weighted `p_b, p_a`.
/// * 3, even, `p_∅ ≠ 0`: pendants `a u_a, b u_b, c u_c` (weights `p_∅, 1, 1`)
///   and a triangle on the `u`s carrying `p_ab, p_ac, p_bc / p_∅`. With
///   `p_∅ = 0`: a star from `z` to `a, b, c` weighted `p_bc, p_ac, p_ab`
///   beside a separate edge.
/// * 3, odd, some `p_x ≠ 0`: unit pendants, a centre `z` joined to each
///   `u_x` with weight `p_x`, and the triangle edge opposite `u_x` carrying
///   `p_abc / p_x`. Otherwise the boundary is left isolated beside an edge of
///   weight `p_abc`.
pub fn synthesize_matchgate(
    boundary_size: usize,
    parity: Parity,
    p: &BTreeMap<VertexSet, Weight>,
) -> Result<Option<MatchgateGadget>> {
    if !(2..=3).contains(&boundary_size) {
        return Err(Error::InvalidParameter(alloc::format!(
            "matchgate boundary of size {boundary_size}"
        )));
    }
    for gamma in feasible_exposures(boundary_size, parity) {
        if !p.contains_key(&gamma) {
            return Err(Error::InvalidParameter(alloc::format!("missing p for exposure {gamma:?}")));
        }
    }
    let at = |s: &[usize]| -> Weight { p[&s.iter().copied().collect::<VertexSet>()].clone() };
    let one = Weight::one;
    let (n, edges): (usize, Vec<(usize, usize, Weight)>) = match (boundary_size, parity) {
        (2, Parity::Even) => (4, alloc::vec![(0, 2, at(&[])), (2, 3, at(&[0, 1])), (3, 1, one())]),
        (2, Parity::Odd) => (3, alloc::vec![(0, 2, at(&[1])), (2, 1, at(&[0]))]),
        (3, Parity::Even) => {
            let empty = at(&[]);
            if !empty.is_zero() {
                let bc = at(&[1, 2]) / &empty;
                (
                    6,
                    alloc::vec![
                        (0, 3, empty),
                        (1, 4, one()),
                        (2, 5, one()),
                        (3, 4, at(&[0, 1])),
                        (3, 5, at(&[0, 2])),
                        (4, 5, bc),
                    ],
                )
            } else {
                (
                    6,
                    alloc::vec![(0, 3, at(&[1, 2])), (1, 3, at(&[0, 2])), (2, 3, at(&[0, 1])), (4, 5, one())],
                )
            }
        }
        (3, Parity::Odd) => {
            let singles = [at(&[0]), at(&[1]), at(&[2])];
            match (0..3).find(|&x| !singles[x].is_zero()) {
                Some(x) => {
                    // u_i = 3 + i, z = 6
                    let mut e = alloc::vec![(0, 3, one()), (1, 4, one()), (2, 5, one())];
                    for (i, s) in singles.iter().enumerate() {
                        e.push((6, 3 + i, s.clone()));
                    }
                    let (y, z) = match x {
                        0 => (1, 2),
                        1 => (0, 2),
                        _ => (0, 1),
                    };
                    e.push((3 + y, 3 + z, at(&[0, 1, 2]) / &singles[x]));
                    (7, e)
                }
                None => (5, alloc::vec![(3, 4, at(&[0, 1, 2]))]),
            }
        }
        _ => unreachable!(),
    };
    let mut b = Graph::builder(n)?;
    for (u, v, w) in edges {
        if w.is_zero() {
            continue;
        }
        if w.is_one() {
            b.add_edge(u, v)?;
        } else {
            b.add_weighted_edge(u, v, w)?;
        }
    }
    let gadget = MatchgateGadget {
        boundary: (0..boundary_size).collect(),
        graph: b.build(),
        parity,
    };
    Ok(gadget.encodes(p)?.then_some(gadget))
}

/// Conditional counts `p_γ = pmm(G_B - γ)` of the right side of `sep`, where
/// `G_B` is `g[B]` without the edges inside `A∩B`. Keys are subsets of the
/// separator in original indices; only parity-feasible `γ` are listed.
pub fn side_counts(
    g: &Graph,
    sep: &Separation,
    mut side_pmm: impl FnMut(&Graph) -> Result<Weight>,
) -> Result<BTreeMap<VertexSet, Weight>> {
    check_separation(g, sep)?;
    let x = sep.separator();
    let gb = g.without_edges_inside(x);
    let mut out = BTreeMap::new();
    for gamma in subsets(x) {
        let verts = sep.right - gamma;
        if verts.len() % 2 == 1 {
            continue;
        }
        out.insert(gamma, side_pmm(&gb.induced(verts).0)?);
    }
    Ok(out)
}

/// `pmm(g)` as `Σ_γ pmm(g[A] - (A∩B∖γ)) · p_γ` over `γ ⊆ A∩B`, with both
/// sides counted by `side_pmm`. The separation must have order 2 or 3.
pub fn combine_separation_pmm(
    g: &Graph,
    sep: &Separation,
    mut side_pmm: impl FnMut(&Graph) -> Result<Weight>,
) -> Result<Weight> {
    let p = side_counts(g, sep, &mut side_pmm)?;
    let x = sep.separator();
    let mut total = Weight::zero();
    for (gamma, pg) in p {
        if pg.is_zero() {
            continue;
        }
        let left = sep.left - (x - gamma);
        if left.len() % 2 == 1 {
            continue;
        }
        total += side_pmm(&g.induced(left).0)? * pg;
    }
    Ok(total)
}

fn check_separation(g: &Graph, sep: &Separation) -> Result<()> {
    if !sep.is_valid(g) {
        return Err(Error::InvalidParameter("not a separation of the graph".into()));
    }
    if !(2..=3).contains(&sep.order()) {
        return Err(Error::InvalidParameter(alloc::format!(
            "separation of order {} (need 2 or 3)",
            sep.order()
        )));
    }
    Ok(())
}

fn subsets(x: VertexSet) -> Vec<VertexSet> {
    let mut out = Vec::new();
    crate::graph::for_each_subset(x, |s| out.push(s));
    out
}
