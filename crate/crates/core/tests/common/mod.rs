#![allow(dead_code)]

use hplanar_core::generators::random_planar;
use hplanar_core::planarity::{is_planar, Planarity};
use hplanar_core::{Graph, VertexSet};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn set(v: &[usize]) -> VertexSet {
    v.iter().copied().collect()
}

/// Planar skeleton with blobs from `class` hung on edges, facial triangles
/// and K4s of the skeleton. Returns the graph and the skeleton vertices.
pub fn hplanar_instance(rng: &mut ChaCha8Rng, blob_kind: &str) -> (Graph, VertexSet) {
    let s_n = rng.gen_range(3..=9);
    let m = rng.gen_range(s_n..=3 * s_n - 6);
    let skel = random_planar(rng, s_n, m);
    let mut edges: Vec<(usize, usize)> = skel.edges();
    let mut n = s_n;
    let mut anchors: Vec<VertexSet> = Vec::new();
    for (u, v) in skel.edges() {
        anchors.push(set(&[u, v]));
    }
    if let Planarity::Planar(rot) = is_planar(&skel) {
        for f in rot.faces() {
            if f.len() == 3 {
                anchors.push(set(&f));
            }
        }
    }
    let adj = skel.adjacency();
    for q in hplanar_core::graph::subsets_up_to(skel.vertices(), 4) {
        if q.len() == 4 && q.iter().all(|v| (adj[v] & q).len() == 3) {
            anchors.push(q);
        }
    }
    let blobs = rng.gen_range(1..=3);
    for _ in 0..blobs {
        let size = rng.gen_range(1..=3);
        if n + size > 16 {
            break;
        }
        let nb = anchors[rng.gen_range(0..anchors.len())];
        let blob: Vec<usize> = (n..n + size).collect();
        n += size;
        for (i, &a) in blob.iter().enumerate() {
            for &b in &blob[i + 1..] {
                let join = match blob_kind {
                    "cluster" => true,
                    _ => rng.gen_bool(0.6) && (a + b) % 2 == 1,
                };
                if join {
                    edges.push((a, b));
                }
            }
        }
        for s in nb {
            let mut any = false;
            for &b in &blob {
                if rng.gen_bool(0.5) {
                    edges.push((s, b));
                    any = true;
                }
            }
            if !any {
                edges.push((s, blob[rng.gen_range(0..blob.len())]));
            }
        }
    }
    (Graph::from_edges(n, &edges).unwrap(), skel.vertices())
}
