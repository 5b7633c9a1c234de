use alloc::vec::Vec;

use crate::bitset::VertexSet;
use crate::decomposition::{bag_torso, verify_elimination_sequence, BagTag, EliminationSequence, PlanarWidthDecomposition};
use crate::decomposition::verify_planar_width_within;
use crate::error::{Error, Result};
use crate::graph::{components_within, torso_adj, Graph};
use crate::hclass::HClass;
use crate::modulator::{verify_planar_modulator, PlanarModulator};
use crate::planarity::{planar_color, Coloring, COLOR_BACKTRACK_CEILING};

/// A proper coloring in which the components of `G - X` share one palette
/// and the modulator side uses extra colors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditiveColoring {
    pub coloring: Coloring,
    /// Largest number of colors used on a single component (at most `χ(G)`).
    pub component_colors: usize,
    /// Colors used beyond `component_colors`: the achieved additive constant.
    pub extra: usize,
    /// The guaranteed additive constant for this run.
    pub bound: usize,
}

/// Colors the components of `g - x` with the class solver, all from one
/// palette `0..c`, and returns the largest count used.
fn color_components(g: &Graph, h: &HClass, x: VertexSet, colors: &mut [usize]) -> Result<usize> {
    let mut used = 0;
    for c in components_within(g.adjacency(), g.vertices() - x) {
        let (sub, map) = g.induced(c);
        let local = h.chromatic(&sub)?;
        if !local.is_proper(&sub) {
            return Err(Error::ContractBreach(alloc::format!("class {} returned an improper coloring", h.name)));
        }
        for (i, &v) in map.iter().enumerate() {
            colors[v] = local.colors[i];
        }
        used = used.max(local.color_count);
    }
    Ok(used)
}

/// Colors `g[layer]` (planar) with colors `offset..` and returns how many
/// it used and the palette it was guaranteed.
fn color_planar_part(g: &Graph, layer: VertexSet, offset: usize, colors: &mut [usize]) -> Result<(usize, usize)> {
    let (sub, map) = g.induced(layer);
    let pc = planar_color(&sub, COLOR_BACKTRACK_CEILING)?;
    for (i, &v) in map.iter().enumerate() {
        colors[v] = offset + pc.coloring.colors[i];
    }
    Ok((pc.coloring.color_count, pc.palette))
}

fn finish(g: &Graph, colors: Vec<usize>, component_colors: usize, bound: usize) -> Result<AdditiveColoring> {
    let coloring = Coloring::normalized(colors);
    if !coloring.is_proper(g) {
        return Err(Error::ContractBreach("additive coloring is not proper".into()));
    }
    let extra = coloring.color_count - component_colors.min(coloring.color_count);
    Ok(AdditiveColoring {
        coloring,
        component_colors,
        extra,
        bound,
    })
}

/// Components by the class solver, then `g[x]` with a fresh planar palette
/// of 4 colors (5 above the backtracking ceiling).
pub fn additive_color(g: &Graph, h: &HClass, x: &PlanarModulator) -> Result<AdditiveColoring> {
    if !verify_planar_modulator(g, h, x.x)?.is_valid() {
        return Err(Error::InvalidCertificate("not a planar modulator for this class".into()));
    }
    let mut colors = alloc::vec![0; g.n()];
    let c = color_components(g, h, x.x, &mut colors)?;
    let (_, palette) = color_planar_part(g, x.x, c, &mut colors)?;
    finish(g, colors, c, palette)
}

/// One fresh planar palette per layer of a verified elimination sequence.
pub fn ptd_color(g: &Graph, h: &HClass, seq: &EliminationSequence) -> Result<AdditiveColoring> {
    if let Err(f) = verify_elimination_sequence(g, h, seq)? {
        return Err(Error::InvalidCertificate(alloc::format!("elimination sequence: {f:?}")));
    }
    let x = seq.union();
    let mut colors = alloc::vec![0; g.n()];
    let c = color_components(g, h, x, &mut colors)?;
    let mut offset = c;
    let mut bound = 0;
    for &layer in &seq.layers {
        let (used, palette) = color_planar_part(g, layer, offset, &mut colors)?;
        offset += used;
        bound += palette;
    }
    finish(g, colors, c, bound)
}

/// Colors `g[x]` bag by bag along a planar-width decomposition of
/// `torso(g, x)` with `max(palette, k + 1)` colors, then the components of
/// `g - x` with the class solver.
///
/// Bags are visited from the root; the vertices a bag shares with its
/// parent are already colored and pairwise adjacent in the torso, so they
/// carry distinct colors. A small bag gives its other vertices unused
/// colors; a planar bag is colored through its torso and the colors are
/// permuted to agree on the shared clique.
pub fn ptw_color(g: &Graph, h: &HClass, x: VertexSet, pw: &PlanarWidthDecomposition, k: usize) -> Result<AdditiveColoring> {
    let adj = g.adjacency();
    if !x.is_subset(&g.vertices()) {
        return Err(Error::InvalidCertificate("modulator outside the graph".into()));
    }
    let t = torso_adj(adj, x);
    if let Err(f) = verify_planar_width_within(&t, x, pw, k) {
        return Err(Error::InvalidCertificate(alloc::format!("planar width decomposition: {f:?}")));
    }
    for c in components_within(adj, g.vertices() - x) {
        if !h.contains_within(adj, c)? {
            return Err(Error::InvalidCertificate(alloc::format!("component {c:?} outside {}", h.name)));
        }
    }
    let mut colors = alloc::vec![usize::MAX; g.n()];
    let mut palette = k + 1;
    let nodes = pw.base.bags.len();
    let mut parent = alloc::vec![usize::MAX; nodes];
    let mut order = Vec::new();
    if nodes > 0 {
        parent[0] = 0;
        order.push(0);
    }
    let mut i = 0;
    while i < order.len() {
        let b = order[i];
        for s in pw.base.neighbors(b) {
            if parent[s] == usize::MAX {
                parent[s] = b;
                order.push(s);
            }
        }
        i += 1;
    }
    for &b in &order {
        let bag = pw.base.bags[b];
        let shared: VertexSet = bag.iter().filter(|&v| colors[v] != usize::MAX).collect();
        match pw.tags[b] {
            BagTag::Small => {
                let mut used: Vec<usize> = shared.iter().map(|v| colors[v]).collect();
                for v in bag - shared {
                    let c = (0..).find(|c| !used.contains(c)).expect("unbounded");
                    colors[v] = c;
                    used.push(c);
                }
            }
            BagTag::PlanarTorso => {
                let bt = bag_torso(&t, &pw.base, b);
                let (sub, map) = torso_graph(&bt, bag);
                let pc = planar_color(&sub, COLOR_BACKTRACK_CEILING)?;
                palette = palette.max(pc.palette);
                // local color -> global color, fixed first by the shared clique
                let mut to_global = alloc::vec![usize::MAX; pc.coloring.color_count];
                for (i, &v) in map.iter().enumerate() {
                    if shared.contains(v) {
                        to_global[pc.coloring.colors[i]] = colors[v];
                    }
                }
                let mut taken: Vec<usize> = to_global.iter().copied().filter(|&c| c != usize::MAX).collect();
                for slot in to_global.iter_mut().filter(|c| **c == usize::MAX) {
                    let c = (0..).find(|c| !taken.contains(c)).expect("unbounded");
                    *slot = c;
                    taken.push(c);
                }
                for (i, &v) in map.iter().enumerate() {
                    if !shared.contains(v) {
                        colors[v] = to_global[pc.coloring.colors[i]];
                    }
                }
            }
        }
    }
    let offset = x.iter().map(|v| colors[v] + 1).max().unwrap_or(0);
    let mut comp_colors = alloc::vec![0; g.n()];
    let c = color_components(g, h, x, &mut comp_colors)?;
    for v in g.vertices() - x {
        colors[v] = offset + comp_colors[v];
    }
    finish(g, colors, c, palette)
}

fn torso_graph(t: &[VertexSet], bag: VertexSet) -> (Graph, Vec<usize>) {
    let mut edges = Vec::new();
    for u in bag {
        for v in (t[u] & bag).iter().filter(|&v| v > u) {
            edges.push((u, v));
        }
    }
    Graph::from_edges(t.len(), &edges).expect("torso rows are in range").induced(bag)
}
