//! Approximation algorithms on H-planar graphs: the layered independent-set
//! scheme with its tree H-decomposition DP, and additive colorings.

mod coloring;
pub mod experimental;
mod independent;

pub use coloring::{additive_color, ptd_color, ptw_color, AdditiveColoring};
pub use independent::{baker_independent_set, treedec_is_dp, BakerRun, IS_BAG_CEILING};
