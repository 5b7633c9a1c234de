use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{components_within, is_connected_within, subsets_up_to, Graph};

/// Default vertex ceiling of [`quasi_4_connected`].
pub const QUASI4_CEILING: usize = 40;

/// Whether `g` is 3-connected and every separation of order three has a
/// side with at most one vertex outside the separator.
pub fn quasi_4_connected(g: &Graph) -> Result<bool> {
    let n = g.n();
    if n > QUASI4_CEILING {
        return Err(Error::CeilingExceeded {
            routine: "quasi_4_connected",
            size: n,
            ceiling: QUASI4_CEILING,
        });
    }
    let adj = g.adjacency();
    let all = g.vertices();
    if n < 4 {
        return Ok(false);
    }
    for s in subsets_up_to(all, 2) {
        if !is_connected_within(adj, all - s) {
            return Ok(false);
        }
    }
    for s in subsets_up_to(all, 3).into_iter().filter(|s| s.len() == 3) {
        let comps = components_within(adj, all - s);
        if comps.len() < 2 {
            continue;
        }
        let rest = n - 3;
        // can the components be split into two groups of at least two?
        let splittable = if comps.len() == 2 {
            comps.iter().all(|c| c.len() >= 2)
        } else {
            rest >= 4
        };
        if splittable {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A set of at most `max_order` vertices whose removal disconnects `g`.
pub fn small_separator(g: &Graph, max_order: usize) -> Option<VertexSet> {
    let all = g.vertices();
    subsets_up_to(all, max_order)
        .into_iter()
        .find(|&s| !is_connected_within(g.adjacency(), all - s) && (all - s).len() >= 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, wheel};

    #[test]
    fn examples() {
        assert!(quasi_4_connected(&complete(5)).unwrap());
        assert!(quasi_4_connected(&wheel(5)).unwrap());
        let diamond = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (1, 3), (2, 3)]).unwrap();
        assert!(!quasi_4_connected(&diamond).unwrap());
        assert_eq!(small_separator(&diamond, 2).map(|s| s.len()), Some(2));
    }
}
