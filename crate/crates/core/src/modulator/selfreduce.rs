use alloc::vec::Vec;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{is_connected_within, Graph};
use crate::hclass::{min_forbidden_subgraph, HClass, FORBIDDEN_CEILING};

use super::{verify_planar_modulator, PlanarModulator};

/// Copies of the forbidden graph glued at each accepted vertex.
const COPIES: usize = 5;

/// Outcome of [`self_reduce_modulator`].
#[derive(Clone, Debug)]
pub struct SelfReduction {
    pub modulator: PlanarModulator,
    /// The minimum forbidden graph used for padding, if any was needed.
    pub forbidden: Option<Graph>,
    pub queries: usize,
    /// Largest vertex count handed to the oracle.
    pub largest_query: usize,
}

/// The padding graph `F'` built from five copies of `f`, and its root.
///
/// For connected `f` the copies share their vertex 0, which becomes the
/// root. Otherwise a new root is made adjacent to every copy vertex.
pub fn padding_gadget(f: &Graph) -> Result<(Graph, usize)> {
    let k = f.n();
    if k == 0 {
        return Err(Error::InvalidParameter("forbidden graph is empty".into()));
    }
    let mut edges = Vec::new();
    if is_connected_within(f.adjacency(), f.vertices()) {
        // root 0, copy c maps vertex x > 0 to 1 + c * (k - 1) + (x - 1)
        let map = |c: usize, x: usize| if x == 0 { 0 } else { 1 + c * (k - 1) + x - 1 };
        for c in 0..COPIES {
            for (u, v) in f.edges() {
                edges.push((map(c, u), map(c, v)));
            }
        }
        Ok((Graph::from_edges(1 + COPIES * (k - 1), &edges)?, 0))
    } else {
        let root = COPIES * k;
        for c in 0..COPIES {
            for (u, v) in f.edges() {
                edges.push((c * k + u, c * k + v));
            }
            for x in 0..k {
                edges.push((c * k + x, root));
            }
        }
        Ok((Graph::from_edges(root + 1, &edges)?, root))
    }
}

/// Identifies the root of `pad` with vertex `v` of `g`; the other padding
/// vertices are appended after those of `g`.
fn glue(g: &Graph, v: usize, pad: &Graph, root: usize) -> Result<Graph> {
    let base = g.n();
    let map = |x: usize| match x.cmp(&root) {
        core::cmp::Ordering::Equal => v,
        core::cmp::Ordering::Less => base + x,
        core::cmp::Ordering::Greater => base + x - 1,
    };
    let mut edges = g.edges();
    edges.extend(pad.edges().into_iter().map(|(a, b)| (map(a), map(b))));
    Graph::from_edges(base + pad.n() - 1, &edges)
}

/// Builds a planar H-modulator using only a decision oracle.
///
/// Vertices are visited in index order. Gluing the padding graph at `v`
/// keeps the instance positive exactly when some modulator of the current
/// graph contains `v`, because five padded copies of a forbidden graph left
/// outside would force a `K5` into the torso. Accepted vertices keep their
/// padding, so later queries respect the earlier choices.
///
/// Returns `Ok(None)` when the oracle rejects `g` itself. A final set that
/// fails verification means the oracle contradicted itself.
pub fn self_reduce_modulator(
    g: &Graph,
    h: &HClass,
    decide: &mut dyn FnMut(&Graph) -> Result<bool>,
) -> Result<Option<SelfReduction>> {
    let g = g.without_weights();
    let mut queries = 1;
    let mut largest_query = g.n();
    if !decide(&g)? {
        return Ok(None);
    }
    let forbidden = min_forbidden_subgraph(h, FORBIDDEN_CEILING)?;
    let mut x = VertexSet::new();
    if let Some(f) = &forbidden {
        let (pad, root) = padding_gadget(f)?;
        let mut current = g.clone();
        for v in 0..g.n() {
            let candidate = glue(&current, v, &pad, root)?;
            queries += 1;
            largest_query = largest_query.max(candidate.n());
            if decide(&candidate)? {
                current = candidate;
                x.insert(v);
            }
        }
        let bound = g.n() * (1 + COPIES * f.n()) + 1;
        if largest_query > bound {
            return Err(Error::ContractBreach(alloc::format!(
                "padded query with {largest_query} vertices exceeds {bound}"
            )));
        }
    }
    match verify_planar_modulator(&g, h, x)?.modulator() {
        Some(modulator) => Ok(Some(SelfReduction {
            modulator,
            forbidden,
            queries,
            largest_query,
        })),
        None => Err(Error::OracleFault(alloc::format!(
            "padding loop produced {:?}, which is not a planar modulator",
            x.to_vec()
        ))),
    }
}
