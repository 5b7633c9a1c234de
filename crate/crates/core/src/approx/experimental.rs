//! Layered independent set over a planar-width decomposition of the torso.
//! Nothing here is proven; every answer is checked for independence and the
//! approximation ratio is only measured.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use crate::bitset::VertexSet;
use crate::decomposition::{bag_torso, verify_planar_width_within, BagTag, PlanarWidthDecomposition, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::{components_within, neighborhood_adj, torso_adj, Graph, Weight};
use crate::hclass::HClass;
use crate::planarity::bfs_layers_within;

use super::independent::{first_edge_inside, independent_set_dp};
use super::BakerRun;

/// Each planar bag is layered from the least vertex of each component of
/// its torso; a vertex joins stratum `j` when one of its layer indices is
/// `j` modulo `k`. Vertices only in small bags are never deleted, and a
/// vertex in several planar bags may sit in several strata, so `strata`
/// need not partition `x`. The rest is solved exactly over a greedy
/// decomposition, whose width is whatever it turns out to be.
pub fn baker_independent_set_ptw(
    g: &Graph,
    h: &HClass,
    x: VertexSet,
    pw: &PlanarWidthDecomposition,
    width: usize,
    epsilon: &Weight,
) -> Result<BakerRun> {
    if !epsilon.is_positive() || *epsilon >= Weight::one() {
        return Err(Error::InvalidParameter(alloc::format!(
            "epsilon must lie strictly between 0 and 1, got {epsilon}"
        )));
    }
    let adj = g.adjacency();
    if !x.is_subset(&g.vertices()) {
        return Err(Error::InvalidCertificate("modulator outside the graph".into()));
    }
    let t = torso_adj(adj, x);
    if let Err(f) = verify_planar_width_within(&t, x, pw, width) {
        return Err(Error::InvalidCertificate(alloc::format!("planar width decomposition: {f:?}")));
    }
    let components = components_within(adj, g.vertices() - x);
    for &c in &components {
        if !h.contains_within(adj, c)? {
            return Err(Error::InvalidCertificate(alloc::format!("component {c:?} outside {}", h.name)));
        }
    }
    let k = (Weight::from_integer(BigInt::from(2)) / epsilon)
        .ceil()
        .to_integer()
        .to_usize()
        .ok_or_else(|| Error::InvalidParameter("epsilon too small".into()))?;

    let mut layers: Vec<VertexSet> = Vec::new();
    let mut strata = alloc::vec![VertexSet::new(); k];
    for (b, tag) in pw.tags.iter().enumerate() {
        if *tag != BagTag::PlanarTorso {
            continue;
        }
        let bt = bag_torso(&t, &pw.base, b);
        for comp in components_within(&bt, pw.base.bags[b]) {
            let root = comp.first().expect("non-empty");
            for (i, l) in bfs_layers_within(&bt, comp, root).layers.into_iter().enumerate() {
                if layers.len() <= i {
                    layers.push(VertexSet::new());
                }
                layers[i] |= l;
                strata[i % k] |= l;
            }
        }
    }

    let mut sizes = Vec::with_capacity(k);
    let mut best: Option<(usize, VertexSet)> = None;
    for (i, &s) in strata.iter().enumerate() {
        let xi = x - s;
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
        let td = TreeDecomposition::min_degree(&t, xi);
        let answer = independent_set_dp(&sub, verts, &td, &kept, h)?;
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
