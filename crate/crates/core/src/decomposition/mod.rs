//! Tree decompositions, planar treedepth and planar treewidth certificates.

mod elimination;
mod htree;
mod quasi;
mod treedec;
mod width;

pub use elimination::{
    planar_treedepth_exact, planar_treedepth_exact_with, treedepth_exact, verify_elimination_forest,
    verify_elimination_sequence, EliminationFault, EliminationSequence, PTD_CEILING,
};
pub use htree::{h_tree_decomposition, h_tree_decomposition_verify, HTreeDecomposition, HTreeFault};
pub use quasi::{quasi_4_connected, small_separator, QUASI4_CEILING};
pub use treedec::{TreeDecomposition, TreeDecompositionFault};
pub(crate) use width::{planar_width_at_most, verify_planar_width_within};
pub use width::{
    bag_torso, planar_treewidth_exact, planar_treewidth_exact_with, treewidth_exact, verify_planar_width, BagTag,
    PlanarWidthDecomposition, PlanarWidthFault, PTW_CEILING, TW_CEILING,
};
