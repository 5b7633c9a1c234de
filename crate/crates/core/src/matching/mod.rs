//! Exact weighted perfect-matching counting.

mod brute;
mod fkt;
mod gadget;
mod hplanar;

pub use brute::{pmm_bruteforce, pmm_bruteforce_within, PMM_BRUTE_CEILING};
pub use fkt::{fkt_pmm, pfaffian_orientation, PfaffianOrientation};
pub use gadget::{
    combine_separation_pmm, feasible_exposures, side_counts, synthesize_matchgate, MatchgateGadget, Parity,
};
pub use hplanar::{hplanar_pmm, hplanar_pmm_traced, PmmRun, PmmStep, Substitution};
