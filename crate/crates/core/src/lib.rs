//! Planar H-modulators and the algorithms built on them.
//!
//! A set `X` of vertices is a planar H-modulator of `G` when the torso of `X`
//! is planar and every component of `G - X` belongs to the class `H`. This
//! crate provides exact (exponential, desk-scale) searches for such sets,
//! certificates for the associated depth and width measures, and the three
//! applications: additive coloring, exact perfect-matching counting and a
//! Baker-style approximation scheme for independent set.
//!
//! Everything here is `no_std` with `alloc`. File formats and the command
//! line live in the `hplanar` crate.

#![no_std]

extern crate alloc;

pub mod approx;
pub mod bitset;
pub mod decomposition;
pub mod error;
pub mod exact;
pub mod generators;
pub mod graph;
pub mod hardness;
pub mod hclass;
pub mod matching;
pub mod minor;
pub mod modulator;
pub mod planarity;

pub use bitset::{VertexSet, MAX_VERTICES};
pub use error::{Error, Result};
pub use graph::{Graph, GraphBuilder, Separation, Weight};
