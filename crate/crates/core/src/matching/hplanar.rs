use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::bitset::{VertexSet, MAX_VERTICES};
use crate::error::{Error, Result};
use crate::graph::{components_within, neighborhood_adj, torso_adj, Graph, Weight};
use crate::hclass::HClass;
use crate::modulator::{verify_planar_modulator, PlanarModulator};
use crate::planarity::{blocks, embed, is_planar_adj};

use super::fkt_pmm;
use super::gadget::{feasible_exposures, synthesize_matchgate, MatchgateGadget, Parity};

/// One event of an H-planar matching count. Vertex sets refer to the
/// working graph, which starts as the input and reuses freed indices for
/// gadget vertices.
#[derive(Clone, Debug)]
pub enum PmmStep {
    /// A connected piece of odd order contributes zero.
    OddOrder { part: VertexSet },
    /// `at` is a cut vertex; it is matched into `odd_side`, the unique odd
    /// component of `part - at`. Several odd components give zero.
    CutVertex { at: usize, odd_side: Option<VertexSet> },
    Substitution(Substitution),
    /// A block that is neither planar nor in the class was expanded along
    /// the partners of `at`. This flags a 4-neighbour component whose fourth
    /// neighbour did not end up inside the disk.
    Expansion { block: VertexSet, at: usize },
    /// Final count of a planar piece.
    Fkt { part: VertexSet, value: Weight },
}

/// Replacement of the side `B` of an order 2 or 3 separation by a gadget.
#[derive(Clone, Debug)]
pub struct Substitution {
    pub boundary: Vec<usize>,
    /// `B` minus the boundary.
    pub removed: VertexSet,
    /// `p_γ` keyed by subsets of the boundary.
    pub p: BTreeMap<VertexSet, Weight>,
    /// `None` when synthesis declined and the two sides were combined
    /// directly.
    pub gadget: Option<MatchgateGadget>,
    /// Working indices of the gadget vertices, boundary first.
    pub placed: Vec<usize>,
    /// The piece before and after, relabelled in increasing index order.
    pub before: Graph,
    pub after: Option<Graph>,
}

#[derive(Clone, Debug)]
pub struct PmmRun {
    pub value: Weight,
    pub steps: Vec<PmmStep>,
}

/// Weighted number of perfect matchings of an H-planar graph, given a
/// planar H-modulator.
pub fn hplanar_pmm(g: &Graph, h: &HClass, x: &PlanarModulator) -> Result<Weight> {
    Ok(hplanar_pmm_traced(g, h, x)?.value)
}

/// [`hplanar_pmm`] with the list of reductions and substitutions.
///
/// Components, odd orders and cut vertices are split off first. On a
/// 2-connected piece every component `D` of `G - S` determines a disk in
/// the embedded torso: the edge `N(D)` if `|N(D)| = 2`, the smaller side of
/// the triangle `N(D)` if `|N(D)| = 3`, and for `|N(D)| = 4` the smallest
/// side of a triangle of `N(D)` that holds the fourth neighbour. The disk
/// with the fewest inner torso vertices is replaced by a gadget, and the
/// result is reduced again. Once no component is left, the piece is planar
/// and counted by FKT.
pub fn hplanar_pmm_traced(g: &Graph, h: &HClass, x: &PlanarModulator) -> Result<PmmRun> {
    let Some(m) = verify_planar_modulator(g, h, x.x)?.modulator() else {
        return Err(Error::InvalidCertificate("not a planar modulator for this class".into()));
    };
    if !m.components.is_empty() && h.pmm_solver.is_none() {
        return Err(Error::MissingSolver {
            class: h.name.clone(),
            solver: "pmm",
        });
    }
    let mut run = Runner { h, steps: Vec::new() };
    let mut work = Work::from_graph(g);
    let value = run.solve(&mut work, g.vertices(), x.x)?;
    Ok(PmmRun { value, steps: run.steps })
}

/// Mutable weighted graph over fixed indices.
#[derive(Clone)]
struct Work {
    adj: Vec<VertexSet>,
    weights: BTreeMap<(usize, usize), Weight>,
    alive: VertexSet,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

impl Work {
    fn from_graph(g: &Graph) -> Work {
        Work {
            adj: g.adjacency().to_vec(),
            weights: g.explicit_weights().clone(),
            alive: g.vertices(),
        }
    }

    fn weight(&self, u: usize, v: usize) -> Weight {
        self.weights.get(&key(u, v)).cloned().unwrap_or_else(Weight::one)
    }

    fn graph_on(&self, verts: VertexSet) -> Graph {
        Graph::from_parts(self.adj.clone(), self.weights.clone()).induced(verts).0
    }

    fn remove(&mut self, s: VertexSet) {
        for v in s {
            for u in self.adj[v] {
                self.adj[u].remove(v);
            }
            self.adj[v] = VertexSet::new();
        }
        self.weights.retain(|&(u, v), _| !s.contains(u) && !s.contains(v));
        self.alive -= s;
    }

    fn add_vertex(&mut self) -> Result<usize> {
        let v = (!self.alive).first().filter(|&v| v < MAX_VERTICES).ok_or(Error::TooManyVertices {
            n: MAX_VERTICES + 1,
            max: MAX_VERTICES,
        })?;
        if v >= self.adj.len() {
            self.adj.resize(v + 1, VertexSet::new());
        }
        self.alive.insert(v);
        Ok(v)
    }

    fn add_edge(&mut self, u: usize, v: usize, w: Weight) {
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        if w.is_one() {
            self.weights.remove(&key(u, v));
        } else {
            self.weights.insert(key(u, v), w);
        }
    }

    /// Rows restricted to `verts`, empty elsewhere.
    fn restricted(&self, verts: VertexSet) -> Vec<VertexSet> {
        self.adj
            .iter()
            .enumerate()
            .map(|(v, &a)| if verts.contains(v) { a & verts } else { VertexSet::new() })
            .collect()
    }
}

struct Runner<'a> {
    h: &'a HClass,
    steps: Vec<PmmStep>,
}

/// Chosen side of a separation: boundary `x` and inner torso vertices.
struct Disk {
    x: VertexSet,
    inner: VertexSet,
}

impl Runner<'_> {
    fn solve(&mut self, work: &mut Work, part: VertexSet, s: VertexSet) -> Result<Weight> {
        let comps = components_within(&work.adj, part);
        if comps.len() > 1 {
            let mut total = Weight::one();
            for c in comps {
                total *= self.solve(work, c, s)?;
                if total.is_zero() {
                    break;
                }
            }
            return Ok(total);
        }
        if part.is_empty() {
            return Ok(Weight::one());
        }
        if part.len() % 2 == 1 {
            self.steps.push(PmmStep::OddOrder { part });
            return Ok(Weight::zero());
        }
        if let Some((c1, rest)) = self.split_at_cut_vertex(work, part, true) {
            return match c1 {
                None => Ok(Weight::zero()),
                Some(c1) => Ok(self.solve(work, c1, s)? * self.solve(work, rest, s)?),
            };
        }
        let s = s & part;
        let adj = work.restricted(part);
        let comps = components_within(&adj, part - s);
        if comps.is_empty() {
            let value = fkt_pmm(&work.graph_on(part))?;
            self.steps.push(PmmStep::Fkt {
                part,
                value: value.clone(),
            });
            return Ok(value);
        }
        if comps.iter().any(|&d| neighborhood_adj(&adj, d).len() < 2) {
            // S has at most one vertex: the whole piece is one block
            return self.pmm_by_blocks(work, part);
        }
        let disk = self.choose_disk(&adj, s, &comps)?;
        let closed = disk.x | disk.inner;
        let mut b = closed;
        for &d in &comps {
            if neighborhood_adj(&adj, d).is_subset(&closed) {
                b |= d;
            }
        }
        if !neighborhood_adj(&adj, b - disk.x).is_subset(&b) {
            return Err(Error::ContractBreach("disk side is not separated by its boundary".into()));
        }
        self.substitute(work, part, s, disk.x, b)
    }

    /// `(Some(odd side ∪ {v}), rest)` for the first cut vertex `v` of the
    /// connected even piece, `(None, _)` if it has several odd sides, and
    /// `None` without a cut vertex.
    fn split_at_cut_vertex(&mut self, work: &Work, part: VertexSet, record: bool) -> Option<(Option<VertexSet>, VertexSet)> {
        let v = blocks(&work.adj, part).1.first()?;
        let rest = part - VertexSet::singleton(v);
        let odd: Vec<VertexSet> = components_within(&work.adj, rest)
            .into_iter()
            .filter(|c| c.len() % 2 == 1)
            .collect();
        let odd_side = (odd.len() == 1).then(|| odd[0]);
        if record {
            self.steps.push(PmmStep::CutVertex { at: v, odd_side });
        }
        Some(match odd_side {
            Some(c1) => (Some(c1 | VertexSet::singleton(v)), rest - c1),
            None => (None, VertexSet::new()),
        })
    }

    fn choose_disk(&self, adj: &[VertexSet], s: VertexSet, comps: &[VertexSet]) -> Result<Disk> {
        let t = torso_adj(adj, s);
        let rot = embed(&t, s).ok_or_else(|| Error::ContractBreach("torso of the modulator is not planar".into()))?;
        let mut best: Option<Disk> = None;
        let mut offer = |d: Disk| {
            let better = match &best {
                None => true,
                Some(b) => (d.inner.len(), d.x.to_vec(), d.inner.to_vec()) < (b.inner.len(), b.x.to_vec(), b.inner.to_vec()),
            };
            if better {
                best = Some(d);
            }
        };
        for &d in comps {
            let nb = neighborhood_adj(adj, d);
            match nb.len() {
                2 => offer(Disk {
                    x: nb,
                    inner: VertexSet::new(),
                }),
                3 => {
                    let (l, r) = triangle_sides(&t, &rot, s, nb);
                    offer(Disk { x: nb, inner: l });
                    offer(Disk { x: nb, inner: r });
                }
                4 => {
                    for v in nb {
                        let x = nb - VertexSet::singleton(v);
                        let (l, r) = triangle_sides(&t, &rot, s, x);
                        let inner = if l.contains(v) { l } else { r };
                        offer(Disk { x, inner });
                    }
                }
                k => {
                    return Err(Error::ContractBreach(alloc::format!(
                        "component with {k} neighbours beside a planar torso"
                    )))
                }
            }
        }
        Ok(best.expect("at least one component"))
    }

    fn substitute(&mut self, work: &mut Work, part: VertexSet, s: VertexSet, x: VertexSet, b: VertexSet) -> Result<Weight> {
        let inner = b - x;
        let boundary = x.to_vec();
        let parity = Parity::of(b.len());
        let mut p = BTreeMap::new();
        let mut p_by_pos = BTreeMap::new();
        for pos in feasible_exposures(boundary.len(), parity) {
            let gamma: VertexSet = pos.iter().map(|i| boundary[i]).collect();
            let value = self.exposed_count(work, x - gamma, inner)?;
            p.insert(gamma, value.clone());
            p_by_pos.insert(pos, value);
        }
        let before = work.graph_on(part);
        let gadget = synthesize_matchgate(boundary.len(), parity, &p_by_pos)?;
        let a_side = part - inner;
        let Some(gadget) = gadget else {
            // direct combination over the exposures of the boundary
            self.steps.push(PmmStep::Substitution(Substitution {
                boundary,
                removed: inner,
                p: p.clone(),
                gadget: None,
                placed: Vec::new(),
                before,
                after: None,
            }));
            let mut total = Weight::zero();
            for (gamma, pg) in p {
                if pg.is_zero() {
                    continue;
                }
                let mut w = work.clone();
                w.remove(inner);
                total += self.solve(&mut w, a_side - (x - gamma), s - inner)? * pg;
            }
            return Ok(total);
        };
        work.remove(inner);
        let mut placed = boundary.clone();
        for _ in boundary.len()..gadget.graph.n() {
            placed.push(work.add_vertex()?);
        }
        for (u, v) in gadget.graph.edges() {
            work.add_edge(placed[u], placed[v], gadget.graph.weight(u, v));
        }
        let new: VertexSet = placed[boundary.len()..].iter().copied().collect();
        let part = a_side | new;
        self.steps.push(PmmStep::Substitution(Substitution {
            boundary,
            removed: inner,
            p,
            gadget: Some(gadget),
            placed,
            before,
            after: Some(work.graph_on(part)),
        }));
        self.solve(work, part, (s - inner) | new)
    }

    /// `pmm(H - X + (X∖γ-partners))` where each vertex of `matched` picks a
    /// distinct partner in `inner`; the rest of `inner` is counted block by
    /// block.
    fn exposed_count(&mut self, work: &Work, matched: VertexSet, inner: VertexSet) -> Result<Weight> {
        let Some(v) = matched.first() else {
            return self.pmm_by_blocks(work, inner);
        };
        let rest = matched - VertexSet::singleton(v);
        let mut total = Weight::zero();
        for u in work.adj[v] & inner {
            let sub = self.exposed_count(work, rest, inner - VertexSet::singleton(u))?;
            if !sub.is_zero() {
                total += work.weight(v, u) * sub;
            }
        }
        Ok(total)
    }

    /// Matching count of `work[verts]` through components, cut vertices and
    /// blocks. Blocks that are planar go to FKT, blocks in the class to its
    /// solver; anything else is expanded at its least vertex.
    fn pmm_by_blocks(&mut self, work: &Work, verts: VertexSet) -> Result<Weight> {
        if verts.is_empty() {
            return Ok(Weight::one());
        }
        let comps = components_within(&work.adj, verts);
        if comps.len() > 1 {
            let mut total = Weight::one();
            for c in comps {
                total *= self.pmm_by_blocks(work, c)?;
                if total.is_zero() {
                    break;
                }
            }
            return Ok(total);
        }
        if verts.len() % 2 == 1 {
            return Ok(Weight::zero());
        }
        if let Some((c1, rest)) = self.split_at_cut_vertex(work, verts, false) {
            return match c1 {
                None => Ok(Weight::zero()),
                Some(c1) => Ok(self.pmm_by_blocks(work, c1)? * self.pmm_by_blocks(work, rest)?),
            };
        }
        if is_planar_adj(&work.adj, verts) {
            return fkt_pmm(&work.graph_on(verts));
        }
        if self.h.contains_within(&work.adj, verts)? {
            return self.h.pmm(&work.graph_on(verts));
        }
        let v = verts.first().expect("non-empty");
        self.steps.push(PmmStep::Expansion { block: verts, at: v });
        let rest = verts - VertexSet::singleton(v);
        let mut total = Weight::zero();
        for u in work.adj[v] & rest {
            let sub = self.pmm_by_blocks(work, rest - VertexSet::singleton(u))?;
            if !sub.is_zero() {
                total += work.weight(v, u) * sub;
            }
        }
        Ok(total)
    }
}

/// The torso vertices on either side of the triangle `x` in the embedding
/// `rot` of `t[s]`. A component of `t[s] - x` lies on the side its
/// attachment edges leave from: with the triangle walked `a -> b -> c`, an
/// edge met between `next` and `prev` in the rotation at a triangle vertex
/// is on the first side. Components not attached to `x` go to neither.
fn triangle_sides(t: &[VertexSet], rot: &[Vec<usize>], s: VertexSet, x: VertexSet) -> (VertexSet, VertexSet) {
    let tri = x.to_vec();
    let mut first = VertexSet::new();
    let mut second = VertexSet::new();
    for k in components_within(t, s - x) {
        let Some((i, at)) = tri.iter().enumerate().find_map(|(i, &a)| (t[a] & k).first().map(|u| (i, u))) else {
            continue;
        };
        let v = tri[i];
        let next = tri[(i + 1) % 3];
        let prev = tri[(i + 2) % 3];
        let r = &rot[v];
        let pos = |u: usize| r.iter().position(|&w| w == u).expect("edge in rotation");
        let (pn, pp, pa) = (pos(next), pos(prev), pos(at));
        let len = r.len();
        let ahead = |p: usize| (p + len - pn) % len;
        if ahead(pa) < ahead(pp) {
            first |= k;
        } else {
            second |= k;
        }
    }
    (first, second)
}
