use alloc::vec::Vec;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{components_within, neighborhood_adj, torso_adj, Graph};
use crate::hclass::HClass;

use super::{TreeDecomposition, TreeDecompositionFault};

/// A tree decomposition of `torso(G, x)` plus the components of `G - x`,
/// each hanging off a bag containing its neighbourhood.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HTreeDecomposition {
    pub base: TreeDecomposition,
    pub x: VertexSet,
    pub leaf_components: Vec<VertexSet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HTreeFault {
    NotASubset,
    Base(TreeDecompositionFault),
    /// `leaf_components` is not the component list of `G - x`.
    WrongLeaves,
    LeafOutsideClass(VertexSet),
    /// No bag holds the neighbourhood of this leaf.
    UnattachedLeaf(VertexSet),
}

impl HTreeDecomposition {
    /// Width of the decomposition of the torso (-1 when it has no vertex).
    pub fn width(&self) -> isize {
        self.base.width()
    }

    /// The bag a leaf component hangs off: the first containing its
    /// neighbourhood.
    pub fn attachment(&self, adj: &[VertexSet], leaf: VertexSet) -> Option<usize> {
        let nb = neighborhood_adj(adj, leaf);
        self.base.bags.iter().position(|b| nb.is_subset(b))
    }
}

/// Checks every condition of a tree H-decomposition.
pub fn h_tree_decomposition_verify(
    g: &Graph,
    h: &HClass,
    htd: &HTreeDecomposition,
) -> Result<core::result::Result<(), HTreeFault>> {
    let adj = g.adjacency();
    if !htd.x.is_subset(&g.vertices()) {
        return Ok(Err(HTreeFault::NotASubset));
    }
    let t = torso_adj(adj, htd.x);
    if let Err(f) = htd.base.check_within(&t, htd.x) {
        return Ok(Err(HTreeFault::Base(f)));
    }
    let mut expected = components_within(adj, g.vertices() - htd.x);
    let mut given = htd.leaf_components.clone();
    expected.sort();
    given.sort();
    if expected != given {
        return Ok(Err(HTreeFault::WrongLeaves));
    }
    for &c in &htd.leaf_components {
        if !h.contains_within(adj, c)? {
            return Ok(Err(HTreeFault::LeafOutsideClass(c)));
        }
        if htd.attachment(adj, c).is_none() {
            return Ok(Err(HTreeFault::UnattachedLeaf(c)));
        }
    }
    Ok(Ok(()))
}

/// Combines a modulator `x` with a decomposition of its torso.
pub fn h_tree_decomposition(g: &Graph, x: VertexSet, base: TreeDecomposition) -> Result<HTreeDecomposition> {
    let adj = g.adjacency();
    let t = torso_adj(adj, x);
    base.check_within(&t, x)
        .map_err(|f| Error::InvalidParameter(alloc::format!("not a decomposition of the torso: {:?}", f)))?;
    let mut base = base;
    if base.bags.is_empty() {
        base = TreeDecomposition::single(VertexSet::new());
    }
    Ok(HTreeDecomposition {
        base,
        x,
        leaf_components: components_within(adj, g.vertices() - x),
    })
}
