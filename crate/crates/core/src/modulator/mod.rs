//! Planar H-modulators: verification, exhaustive search, the big-leaf
//! searches and the self-reduction from a decision oracle.

mod bigleaf;
mod exact;
mod selfreduce;
mod splitter;

pub use bigleaf::{big_leaf_gh_search, big_leaf_search, h_deletion, is_gh_modulator, GhModulator, TargetClass};
pub use exact::{
    brute_force_planar_modulator, planar_modulator_exists, ModulatorSearch, MODULATOR_CEILING,
};
pub use selfreduce::{padding_gadget, self_reduce_modulator, SelfReduction};
pub use splitter::{splitter_family, SplitterFamily};

use alloc::vec::Vec;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{components_within, neighborhood_adj, torso, Graph};
use crate::hclass::HClass;
use crate::planarity::{is_planar, KuratowskiWitness, Planarity, RotationSystem};

/// A verified planar H-modulator.
#[derive(Clone, Debug)]
pub struct PlanarModulator {
    pub x: VertexSet,
    /// Embedding of `torso(G, x)` over the original vertex indices.
    pub torso_embedding: RotationSystem,
    /// Components of `G - x`, each checked to lie in the class.
    pub components: Vec<VertexSet>,
}

/// Why a candidate set is not a planar H-modulator.
#[derive(Clone, Debug)]
pub enum ModulatorFault {
    NotASubset,
    NonPlanarTorso(KuratowskiWitness),
    ComponentOutsideClass(VertexSet),
}

#[derive(Clone, Debug)]
pub enum ModulatorCheck {
    Valid(PlanarModulator),
    Invalid(ModulatorFault),
}

impl ModulatorCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, ModulatorCheck::Valid(_))
    }

    pub fn modulator(self) -> Option<PlanarModulator> {
        match self {
            ModulatorCheck::Valid(m) => Some(m),
            ModulatorCheck::Invalid(_) => None,
        }
    }
}

/// Checks that `torso(g, x)` is planar and every component of `g - x` lies
/// in `h`. Components are reported in order of their least vertex.
///
/// A planar torso cannot contain `K5`, so every component neighbourhood
/// (a clique of the torso) has at most four vertices; a larger one is a
/// contract breach of the planarity test and returned as an error.
pub fn verify_planar_modulator(g: &Graph, h: &HClass, x: VertexSet) -> Result<ModulatorCheck> {
    if !x.is_subset(&g.vertices()) {
        return Ok(ModulatorCheck::Invalid(ModulatorFault::NotASubset));
    }
    let t = torso(g, x);
    let embedding = match is_planar(&t) {
        Planarity::Planar(r) => r,
        Planarity::NonPlanar(w) => return Ok(ModulatorCheck::Invalid(ModulatorFault::NonPlanarTorso(w))),
    };
    let components = components_within(g.adjacency(), g.vertices() - x);
    for &c in &components {
        let nb = neighborhood_adj(g.adjacency(), c);
        if nb.len() > 4 {
            return Err(Error::ContractBreach(alloc::format!(
                "component with {} neighbours beside a planar torso",
                nb.len()
            )));
        }
    }
    for &c in &components {
        if !h.contains_within(g.adjacency(), c)? {
            return Ok(ModulatorCheck::Invalid(ModulatorFault::ComponentOutsideClass(c)));
        }
    }
    Ok(ModulatorCheck::Valid(PlanarModulator {
        x,
        torso_embedding: embedding,
        components,
    }))
}

impl PlanarModulator {
    /// Re-runs [`verify_planar_modulator`] and checks the stored embedding.
    pub fn verify(&self, g: &Graph, h: &HClass) -> Result<bool> {
        let ok = verify_planar_modulator(g, h, self.x)?.is_valid();
        Ok(ok && self.torso_embedding.verify(&torso(g, self.x)))
    }
}
