use hplanar_core::generators::{complete, complete_bipartite, icosahedron, random_graph, random_planar};
use hplanar_core::minor::find_minor;
use hplanar_core::planarity::{bfs_layers, few_layer_tree_decomposition, is_planar, planar_color, Planarity};
use hplanar_core::{Graph, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn planarity_matches_kuratowski_minors() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let k5 = complete(5);
    let k33 = complete_bipartite(3, 3);
    let mut nonplanar = 0;
    for _ in 0..10_000 {
        let n = rng.gen_range(1..=10);
        let num = rng.gen_range(1..=8);
        let g = random_graph(&mut rng, n, num, 10);
        let res = is_planar(&g);
        let minor = find_minor(&g, &k5).unwrap().is_some() || find_minor(&g, &k33).unwrap().is_some();
        assert_eq!(res.is_planar(), !minor, "{g:?}");
        match res {
            Planarity::Planar(rot) => assert!(rot.verify(&g)),
            Planarity::NonPlanar(w) => {
                nonplanar += 1;
                assert!(w.verify(&g));
            }
        }
    }
    assert!(nonplanar > 1000);
}

#[test]
fn planar_graphs_have_no_k5_minor() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let k5 = complete(5);
    for _ in 0..300 {
        let n = rng.gen_range(5..=12);
        let m = rng.gen_range(n..=3 * n - 6);
        let g = random_planar(&mut rng, n, m);
        assert!(is_planar(&g).is_planar());
        assert!(find_minor(&g, &k5).unwrap().is_none());
    }
}

#[test]
fn colorings_are_proper_and_small() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..300 {
        let n: usize = rng.gen_range(1..=30);
        let m = rng.gen_range(0..=(3 * n).saturating_sub(6).max(1));
        let g = random_planar(&mut rng, n, m);
        let c = planar_color(&g, 40).unwrap();
        assert!(c.coloring.is_proper(&g));
        assert!(c.coloring.color_count <= 4);
        let c5 = planar_color(&g, 0).unwrap();
        assert!(c5.coloring.is_proper(&g));
        assert!(c5.coloring.color_count <= 5);
    }
    let ico = icosahedron();
    let c = planar_color(&ico, 40).unwrap();
    assert_eq!(c.coloring.color_count, 4);
    assert!(c.optimal);
}

#[test]
fn layers_partition_reachable_vertices() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..200 {
        let n = rng.gen_range(1..=20);
        let g = random_graph(&mut rng, n, 2, 10);
        let root = rng.gen_range(0..n);
        let l = bfs_layers(&g, root);
        let mut all = l.unreachable;
        for layer in &l.layers {
            assert!(!layer.intersects(&all));
            all |= *layer;
        }
        assert_eq!(all, g.vertices());
        for (u, v) in g.edges() {
            match (l.depth_of(u), l.depth_of(v)) {
                (Some(a), Some(b)) => assert!(a.abs_diff(b) <= 1),
                (None, None) => {}
                _ => panic!("edge between reachable and unreachable"),
            }
        }
    }
}

#[test]
fn few_layer_decompositions_are_valid() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..300 {
        let n: usize = rng.gen_range(1..=40);
        let m = rng.gen_range(0..=(3 * n).saturating_sub(6).max(1));
        let g = random_planar(&mut rng, n, m);
        // the largest per-component eccentricity bounds the layers used
        let mut layers = 1;
        let mut seen = VertexSet::new();
        for v in 0..n {
            if seen.contains(v) {
                continue;
            }
            let comp = bfs_layers(&g, v);
            let c: VertexSet = comp.layers.iter().fold(VertexSet::new(), |a, &b| a | b);
            seen |= c;
            let best = c.iter().map(|r| bfs_layers(&g, r).layers.len()).min().unwrap();
            layers = layers.max(best);
        }
        let td = few_layer_tree_decomposition(&g, layers).unwrap();
        assert!(td.check(&g).is_ok());
        assert!(td.width() <= 3 * layers as isize);
    }
}

#[test]
fn outerplanar_and_ladders_stay_narrow() {
    // fan: outerplanar
    let mut e = vec![];
    for i in 1..9 {
        e.push((0, i));
        if i + 1 < 9 {
            e.push((i, i + 1));
        }
    }
    let fan = Graph::from_edges(9, &e).unwrap();
    let td = few_layer_tree_decomposition(&fan, 1).unwrap();
    assert!(td.check(&fan).is_ok());
    assert!(td.width() <= 3);
    let ladder = hplanar_core::generators::grid(2, 9).unwrap();
    let td = few_layer_tree_decomposition(&ladder, 1).unwrap();
    assert!(td.check(&ladder).is_ok());
    assert!(td.width() <= 3);
}
