use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{components_within, Graph, Weight};
use crate::planarity::{embed, RotationSystem};

/// Orientation of every edge of a plane graph such that each face but one
/// per component has an odd number of edges directed along its boundary
/// walk. With all faces traced in the same rotational sense this is the
/// Kasteleyn condition (up to mirroring the embedding).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PfaffianOrientation {
    /// Arcs `u -> v`, one per edge, sorted.
    pub arcs: Vec<(usize, usize)>,
}

impl PfaffianOrientation {
    pub fn forward(&self, u: usize, v: usize) -> bool {
        self.arcs.binary_search(&(u, v)).is_ok()
    }

    /// Checks the face parity condition against `rotation`, allowing one
    /// exceptional face per component.
    pub fn verify(&self, g: &Graph, rotation: &RotationSystem) -> bool {
        if self.arcs.len() != g.m() || self.arcs.iter().any(|&(u, v)| !g.has_edge(u, v)) {
            return false;
        }
        let comps = components_within(g.adjacency(), g.vertices());
        let mut bad = alloc::vec![0usize; comps.len()];
        for f in rotation.faces() {
            let aligned = (0..f.len()).filter(|&i| self.forward(f[i], f[(i + 1) % f.len()])).count();
            if aligned % 2 == 0 {
                bad[comps.iter().position(|c| c.contains(f[0])).unwrap()] += 1;
            }
        }
        bad.iter().all(|&b| b <= 1)
    }
}

/// Pfaffian orientation of a planar graph.
pub fn pfaffian_orientation(g: &Graph) -> Result<(PfaffianOrientation, RotationSystem)> {
    let adj = g.adjacency();
    let rotation = RotationSystem::new(embed(adj, g.vertices()).ok_or(Error::NotPlanar)?);
    let faces = rotation.faces();
    let mut face_of: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (fi, f) in faces.iter().enumerate() {
        for i in 0..f.len() {
            face_of.insert((f[i], f[(i + 1) % f.len()]), fi);
        }
    }

    // BFS spanning forest; tree edges point away from the root
    let mut dir: BTreeMap<(usize, usize), bool> = BTreeMap::new();
    let mut seen = VertexSet::new();
    let mut root_faces = Vec::new();
    for comp in components_within(adj, g.vertices()) {
        let r = comp.first().unwrap();
        seen.insert(r);
        let mut queue = VecDeque::from([r]);
        while let Some(v) = queue.pop_front() {
            for u in adj[v] - seen {
                seen.insert(u);
                dir.insert((v.min(u), v.max(u)), v < u);
                queue.push_back(u);
            }
        }
        if let Some(&f) = face_of.get(&(r, adj[r].first().unwrap_or(r))) {
            root_faces.push(f);
        }
    }

    // the remaining edges form a spanning tree of the dual; fix them from
    // the leaves toward the root face
    let mut unknown = alloc::vec![0usize; faces.len()];
    let mut open: Vec<Vec<(usize, usize)>> = alloc::vec![Vec::new(); faces.len()];
    for (u, v) in g.edges() {
        if !dir.contains_key(&(u, v)) {
            for d in [(u, v), (v, u)] {
                let f = face_of[&d];
                unknown[f] += 1;
                open[f].push((u, v));
            }
        }
    }
    let aligned = |f: usize, dir: &BTreeMap<(usize, usize), bool>| {
        let w = &faces[f];
        (0..w.len())
            .filter(|&i| {
                let (a, b) = (w[i], w[(i + 1) % w.len()]);
                dir.get(&(a.min(b), a.max(b))).is_some_and(|&fw| fw == (a < b))
            })
            .count()
    };
    let mut queue: VecDeque<usize> = (0..faces.len())
        .filter(|&f| unknown[f] == 1 && !root_faces.contains(&f))
        .collect();
    while let Some(f) = queue.pop_front() {
        if unknown[f] != 1 {
            continue;
        }
        let &(u, v) = open[f].iter().find(|e| !dir.contains_key(e)).unwrap();
        // the dart of (u, v) lying on f
        let (a, b) = if face_of[&(u, v)] == f { (u, v) } else { (v, u) };
        let odd_already = aligned(f, &dir) % 2 == 1;
        // aligning the dart a -> b adds one to f's count
        let along = !odd_already;
        dir.insert((u, v), if along { a < b } else { a > b });
        unknown[f] = 0;
        let other = if (a, b) == (u, v) { face_of[&(v, u)] } else { face_of[&(u, v)] };
        unknown[other] -= 1;
        if unknown[other] == 1 && !root_faces.contains(&other) {
            queue.push_back(other);
        }
    }
    let mut arcs: Vec<(usize, usize)> = dir
        .into_iter()
        .map(|((u, v), fw)| if fw { (u, v) } else { (v, u) })
        .collect();
    arcs.sort_unstable();
    let orientation = PfaffianOrientation { arcs };
    debug_assert!(orientation.verify(g, &rotation));
    Ok((orientation, rotation))
}

/// Weighted perfect-matching count of a planar graph.
///
/// The skew matrix `A` of a Pfaffian orientation satisfies
/// `pmm(G) = |Pf(A)|` and `Pf(A)^2 = det(A)`, so the count is the exact
/// square root of an exact rational determinant. Taking the root makes the
/// sign of the Pfaffian irrelevant.
pub fn fkt_pmm(g: &Graph) -> Result<Weight> {
    let (orientation, _) = pfaffian_orientation(g)?;
    let mut total = Weight::one();
    for comp in components_within(g.adjacency(), g.vertices()) {
        if comp.len() % 2 == 1 {
            return Ok(Weight::zero());
        }
        let verts = comp.to_vec();
        let k = verts.len();
        let mut a = alloc::vec![alloc::vec![Weight::zero(); k]; k];
        for (i, &u) in verts.iter().enumerate() {
            for v in g.neighbors(u) {
                let j = comp.rank(v);
                let w = g.weight(u, v);
                a[i][j] = if orientation.forward(u, v) { w } else { -w };
            }
        }
        let det = determinant(a);
        total *= rational_sqrt(&det)
            .ok_or_else(|| Error::ContractBreach("skew determinant is not a square".into()))?;
        if total.is_zero() {
            break;
        }
    }
    Ok(total)
}

/// Determinant by fraction-exact Gaussian elimination.
pub(crate) fn determinant(mut a: Vec<Vec<Weight>>) -> Weight {
    let n = a.len();
    let mut det = Weight::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Weight::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let pivot = a[c][c].clone();
        det *= &pivot;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &pivot;
            for k in c..n {
                let delta = &f * &a[c][k];
                a[r][k] -= delta;
            }
        }
    }
    det
}

fn rational_sqrt(x: &Weight) -> Option<Weight> {
    if x.is_negative() {
        return None;
    }
    let root = |i: &BigInt| {
        let r = i.sqrt();
        (&r * &r == *i).then_some(r)
    };
    Some(Weight::new(root(x.numer())?, root(x.denom())?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cycle, grid};

    fn int(v: i64) -> Weight {
        Weight::from_integer(v.into())
    }

    #[test]
    fn grids() {
        assert_eq!(fkt_pmm(&cycle(4)).unwrap(), int(2));
        assert_eq!(fkt_pmm(&grid(2, 4).unwrap()).unwrap(), int(5));
        assert_eq!(fkt_pmm(&grid(4, 4).unwrap()).unwrap(), int(36));
    }

    #[test]
    fn weighted_c4() {
        let mut b = Graph::builder(4).unwrap();
        b.add_weighted_edge(0, 1, int(3)).unwrap();
        for (u, v) in [(1, 2), (2, 3), (3, 0)] {
            b.add_edge(u, v).unwrap();
        }
        assert_eq!(fkt_pmm(&b.build()).unwrap(), int(4));
    }
}
