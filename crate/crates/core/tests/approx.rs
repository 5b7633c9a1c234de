mod common;

use common::{hplanar_instance, set};
use hplanar_core::approx::{additive_color, baker_independent_set, ptd_color, ptw_color, treedec_is_dp};
use hplanar_core::decomposition::{
    h_tree_decomposition, planar_treedepth_exact, planar_treewidth_exact, treewidth_exact, BagTag, EliminationSequence,
    PlanarWidthDecomposition, TreeDecomposition,
};
use hplanar_core::exact::{chromatic_number_bruteforce, independence_number_bruteforce};
use hplanar_core::generators::{complete_bipartite, cycle, grid, path, random_graph, random_planar};
use hplanar_core::graph::torso;
use hplanar_core::hclass::builtin;
use hplanar_core::modulator::{verify_planar_modulator, PlanarModulator};
use hplanar_core::{Graph, VertexSet, Weight};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ratio(p: i64, q: i64) -> Weight {
    Weight::new(p.into(), q.into())
}

fn is_independent(g: &Graph, s: VertexSet) -> bool {
    s.iter().all(|v| !g.neighbors(v).intersects(&s))
}

fn modulator(g: &Graph, class: &str, x: VertexSet) -> PlanarModulator {
    let h = builtin(class).unwrap();
    verify_planar_modulator(g, &h, x).unwrap().modulator().expect("valid modulator")
}

/// `⌈(1 - ε)·α⌉` for `ε = 1/q`.
fn baker_floor(alpha: usize, q: usize) -> usize {
    (alpha * (q - 1)).div_ceil(q)
}

/// Random graph with a random subset as `x` and the components of `g - x`
/// checked against `class`; `None` when the torso is not planar or a
/// component falls outside the class.
fn random_htd_instance(rng: &mut ChaCha8Rng, class: &str) -> Option<(Graph, hplanar_core::decomposition::HTreeDecomposition)> {
    let n = rng.gen_range(1..=14);
    let num = rng.gen_range(1..4);
    let g = random_graph(rng, n, num, 6);
    let x: VertexSet = (0..n).filter(|_| rng.gen_bool(0.6)).collect();
    let h = builtin(class).unwrap();
    verify_planar_modulator(&g, &h, x).unwrap().modulator()?;
    let t = torso(&g, x);
    let base = TreeDecomposition::min_degree(t.adjacency(), x);
    Some((g.clone(), h_tree_decomposition(&g, x, base).unwrap()))
}

#[test]
fn treedec_dp_matches_exhaustive_alpha() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut checked = 0;
    for i in 0..1500 {
        let class = ["bipartite", "edgeless", "cluster", "forests"][i % 4];
        let Some((g, htd)) = random_htd_instance(&mut rng, class) else {
            continue;
        };
        let h = builtin(class).unwrap();
        let s = treedec_is_dp(&g, &htd, &h).unwrap();
        assert!(is_independent(&g, s));
        assert_eq!(s.len(), independence_number_bruteforce(&g), "{g:?} x = {:?}", htd.x);
        checked += 1;
    }
    assert!(checked > 500, "{checked}");
}

#[test]
fn treedec_dp_examples() {
    let planar = builtin("empty").unwrap();
    let g = path(4);
    let mut td = TreeDecomposition::single(set(&[0, 1]));
    td.bags.extend([set(&[1, 2]), set(&[2, 3])]);
    td.edges.extend([(0, 1), (1, 2)]);
    let htd = h_tree_decomposition(&g, g.vertices(), td).unwrap();
    assert_eq!(treedec_is_dp(&g, &htd, &planar).unwrap().len(), 2);

    // a 4-clique bag with a bipartite component seeing all of it
    let mut b = Graph::builder(10).unwrap();
    b.make_clique(set(&[0, 1, 2, 3])).unwrap();
    for (u, v) in complete_bipartite(3, 3).edges() {
        b.add_edge(u + 4, v + 4).unwrap();
    }
    for (u, v) in [(0, 4), (1, 5), (2, 7), (3, 8), (0, 9)] {
        b.add_edge(u, v).unwrap();
    }
    let g = b.build();
    let h = builtin("bipartite").unwrap();
    let htd = h_tree_decomposition(&g, set(&[0, 1, 2, 3]), TreeDecomposition::single(set(&[0, 1, 2, 3]))).unwrap();
    assert_eq!(treedec_is_dp(&g, &htd, &h).unwrap().len(), independence_number_bruteforce(&g));

    let g = Graph::from_edges(7, &[]).unwrap();
    let x = set(&[0, 1]);
    let htd = h_tree_decomposition(&g, x, TreeDecomposition::min_degree(torso(&g, x).adjacency(), x)).unwrap();
    assert_eq!(treedec_is_dp(&g, &htd, &builtin("edgeless").unwrap()).unwrap().len(), 7);
}

#[test]
fn treedec_dp_rejects_bad_decompositions() {
    let g = cycle(5);
    let h = builtin("edgeless").unwrap();
    let mut htd = h_tree_decomposition(&g, g.vertices(), TreeDecomposition::single(g.vertices())).unwrap();
    htd.base.bags[0] = set(&[0, 1, 2]);
    assert!(treedec_is_dp(&g, &htd, &h).is_err());
}

#[test]
fn baker_meets_its_guarantee() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let mut checked = 0;
    let mut strict = 0;
    for i in 0..1200 {
        let q = [2, 3, 4][i % 3];
        let (class, g, x) = match i % 4 {
            0 | 1 => {
                let kind = if i % 4 == 0 { "cluster" } else { "bipartite" };
                let (g, s) = hplanar_instance(&mut rng, kind);
                (kind, g, s)
            }
            2 => {
                let n = rng.gen_range(1..=16);
                let m = rng.gen_range(0..=3 * n);
                let g = random_planar(&mut rng, n, m);
                ("empty", g.clone(), g.vertices())
            }
            _ => {
                let n = rng.gen_range(4..=16);
                let g = random_graph(&mut rng, n, 1, 4);
                let x: VertexSet = (0..n).filter(|_| rng.gen_bool(0.7)).collect();
                ("forests", g, x)
            }
        };
        let h = builtin(class).unwrap();
        let Some(m) = verify_planar_modulator(&g, &h, x).unwrap().modulator() else {
            continue;
        };
        let run = baker_independent_set(&g, &h, &m, &ratio(1, q as i64)).unwrap();
        assert!(is_independent(&g, run.result));
        assert_eq!(run.k, 2 * q);
        assert_eq!(run.strata.iter().fold(VertexSet::new(), |a, &s| a | s), x);
        let alpha = independence_number_bruteforce(&g);
        assert!(run.result.len() >= baker_floor(alpha, q), "{g:?} x = {x:?} eps = 1/{q}");
        if run.result.len() < alpha {
            strict += 1;
        }
        checked += 1;
    }
    assert!(checked >= 1000, "{checked}");
    // the layering is tight enough to lose something now and then
    println!("{checked} instances, {strict} below optimum");
}

#[test]
fn baker_examples() {
    let h = builtin("bipartite").unwrap();
    let g = grid(4, 4).unwrap();
    let m = modulator(&g, "bipartite", VertexSet::new());
    let run = baker_independent_set(&g, &h, &m, &ratio(1, 2)).unwrap();
    assert!(run.result.len() * 2 >= independence_number_bruteforce(&g));

    // C4 with a bipartite blob on each edge
    let mut e: Vec<(usize, usize)> = (0..4).map(|v| (v, (v + 1) % 4)).collect();
    for i in 0..4 {
        let (a, b) = (4 + 2 * i, 5 + 2 * i);
        e.extend([(a, b), (i, a), ((i + 1) % 4, b), (i, b)]);
    }
    let g = Graph::from_edges(12, &e).unwrap();
    let m = modulator(&g, "bipartite", set(&[0, 1, 2, 3]));
    let run = baker_independent_set(&g, &h, &m, &ratio(1, 3)).unwrap();
    let alpha = independence_number_bruteforce(&g);
    assert!(is_independent(&g, run.result));
    assert!(run.result.len() >= baker_floor(alpha, 3));

    assert!(baker_independent_set(&g, &h, &m, &Weight::from_integer(1.into())).is_err());
    assert!(baker_independent_set(&g, &h, &m, &ratio(3, 2)).is_err());
    assert!(baker_independent_set(&g, &h, &m, &ratio(0, 1)).is_err());
}

#[test]
fn additive_coloring_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut checked = 0;
    for i in 0..300 {
        let kind = ["bipartite", "cluster", "edgeless"][i % 3];
        let (g, x) = hplanar_instance(&mut rng, kind);
        if g.n() > 14 {
            continue;
        }
        let h = builtin(kind).unwrap();
        let Some(m) = verify_planar_modulator(&g, &h, x).unwrap().modulator() else {
            continue;
        };
        let c = additive_color(&g, &h, &m).unwrap();
        let chi = chromatic_number_bruteforce(&g);
        assert!(c.coloring.is_proper(&g));
        assert!(c.component_colors <= chi);
        assert!(c.bound == 4 || c.bound == 5);
        assert!(c.coloring.color_count <= chi + c.bound, "{g:?}");
        assert!(c.extra <= c.bound);
        checked += 1;
    }
    assert!(checked > 100, "{checked}");
}

#[test]
fn additive_coloring_examples() {
    let planar = builtin("empty").unwrap();
    let g = grid(3, 3).unwrap();
    let c = additive_color(&g, &planar, &modulator(&g, "empty", g.vertices())).unwrap();
    assert!(c.coloring.is_proper(&g) && c.coloring.color_count <= c.bound);

    // two C4 components hanging off a triangle
    let mut e = vec![(0, 1), (1, 2), (2, 0)];
    for base in [3, 7] {
        e.extend((0..4).map(|i| (base + i, base + (i + 1) % 4)));
    }
    e.extend([(0, 3), (1, 5), (2, 7), (0, 9)]);
    let g = Graph::from_edges(11, &e).unwrap();
    let bip = builtin("bipartite").unwrap();
    let c = additive_color(&g, &bip, &modulator(&g, "bipartite", set(&[0, 1, 2]))).unwrap();
    assert_eq!(c.component_colors, 2);
    assert!(c.coloring.color_count <= 2 + c.bound);

    let g = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 3), (1, 4), (2, 5)]).unwrap();
    let edgeless = builtin("edgeless").unwrap();
    let c = additive_color(&g, &edgeless, &modulator(&g, "edgeless", set(&[0, 1, 2]))).unwrap();
    assert_eq!(c.component_colors, 1);
    assert!(c.coloring.color_count <= 1 + c.bound);
}

#[test]
fn ptd_coloring_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let h = builtin("edgeless").unwrap();
    let mut deep = 0;
    for _ in 0..150 {
        let n = rng.gen_range(1..=11);
        let g = random_graph(&mut rng, n, 1, 2);
        let Some((depth, seq)) = planar_treedepth_exact(&g, &h, 2).unwrap() else {
            continue;
        };
        let c = ptd_color(&g, &h, &seq).unwrap();
        let chi = chromatic_number_bruteforce(&g);
        assert!(c.coloring.is_proper(&g));
        assert!(c.bound <= 5 * depth);
        assert!(c.coloring.color_count <= chi + c.bound, "{g:?}");
        deep += usize::from(depth == 2);
    }
    assert!(deep > 10, "{deep}");
}

#[test]
fn ptd_coloring_examples() {
    let h = builtin("bipartite").unwrap();
    let (g, x) = {
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        hplanar_instance(&mut rng, "bipartite")
    };
    let m = modulator(&g, "bipartite", x);
    let seq = EliminationSequence { layers: vec![x] };
    let flat = additive_color(&g, &h, &m).unwrap();
    assert_eq!(ptd_color(&g, &h, &seq).unwrap(), flat);

    // K5 needs two layers: one vertex, then the planar K4
    let g = hplanar_core::generators::complete(5);
    let seq = EliminationSequence { layers: vec![set(&[0]), set(&[1, 2, 3, 4])] };
    let c = ptd_color(&g, &builtin("empty").unwrap(), &seq).unwrap();
    assert_eq!(c.coloring.color_count, 5);

    let g = Graph::from_edges(0, &[]).unwrap();
    let c = ptd_color(&g, &h, &EliminationSequence::default()).unwrap();
    assert_eq!(c.coloring.color_count, 0);

    let bad = EliminationSequence { layers: vec![set(&[0])] };
    assert!(ptd_color(&hplanar_core::generators::complete(5), &h, &bad).is_err());
}

/// Planar-width decomposition of `torso(g, x)` over the original indices.
fn torso_pw(g: &Graph, x: VertexSet) -> (usize, PlanarWidthDecomposition) {
    let (sub, map) = torso(g, x).induced(x);
    let (k, mut pw) = planar_treewidth_exact(&sub).unwrap();
    for bag in pw.base.bags.iter_mut() {
        *bag = bag.iter().map(|v| map[v]).collect();
    }
    (k, pw)
}

#[test]
fn ptw_coloring_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(26);
    let mut checked = 0;
    for i in 0..300 {
        let class = ["edgeless", "bipartite", "forests"][i % 3];
        let h = builtin(class).unwrap();
        let n = rng.gen_range(1..=12);
        let num = rng.gen_range(1..4);
        let g = random_graph(&mut rng, n, num, 5);
        let x: VertexSet = (0..n).filter(|_| rng.gen_bool(0.8)).collect();
        if !hplanar_core::graph::components_within(g.adjacency(), g.vertices() - x)
            .into_iter()
            .all(|c| h.contains(&g.induced(c).0).unwrap())
        {
            continue;
        }
        let (k, pw) = torso_pw(&g, x);
        let c = ptw_color(&g, &h, x, &pw, k).unwrap();
        let chi = chromatic_number_bruteforce(&g);
        assert!(c.coloring.is_proper(&g));
        assert_eq!(c.bound, c.bound.max(k + 1));
        assert!(c.coloring.color_count <= chi + c.bound, "{g:?}");
        checked += 1;
    }
    assert!(checked > 150, "{checked}");
}

#[test]
fn ptw_coloring_examples() {
    let edgeless = builtin("edgeless").unwrap();

    // all bags small: an optimal tree decomposition of a 3x3 grid
    let g = grid(3, 3).unwrap();
    let (w, td) = treewidth_exact(&g).unwrap();
    let k = w as usize;
    let tags = vec![BagTag::Small; td.bags.len()];
    let pw = PlanarWidthDecomposition { base: td, tags };
    let c = ptw_color(&g, &edgeless, g.vertices(), &pw, k).unwrap();
    assert_eq!(c.bound, k + 1);
    assert!(c.coloring.is_proper(&g) && c.coloring.color_count <= k + 1);

    // all bags planar: one bag
    let g = grid(4, 4).unwrap();
    let pw = PlanarWidthDecomposition { base: TreeDecomposition::single(g.vertices()), tags: vec![BagTag::PlanarTorso] };
    let c = ptw_color(&g, &edgeless, g.vertices(), &pw, 0).unwrap();
    assert!(c.coloring.color_count <= c.bound && c.bound <= 5);

    // mixed: K5 minus an edge glued to a grid along an edge, plus pendant components
    let mut b = Graph::builder(14).unwrap();
    b.make_clique(set(&[0, 1, 2, 3, 4])).unwrap();
    let k5 = b.build();
    let mut e: Vec<(usize, usize)> = k5.edges().into_iter().filter(|&e| e != (0, 1)).collect();
    e.extend([(3, 5), (5, 6), (6, 4), (5, 7), (7, 8), (8, 6), (7, 9), (9, 10), (10, 8)]);
    e.extend([(11, 0), (11, 1), (12, 9), (13, 10), (13, 9)]);
    let g = Graph::from_edges(14, &e).unwrap();
    let x = VertexSet::full(11);
    let mut td = TreeDecomposition::single(set(&[0, 1, 2, 3, 4]));
    td.bags.push(set(&[3, 4, 5, 6, 7, 8, 9, 10]));
    td.edges.push((0, 1));
    let pw = PlanarWidthDecomposition { base: td, tags: vec![BagTag::Small, BagTag::PlanarTorso] };
    let c = ptw_color(&g, &edgeless, x, &pw, 4).unwrap();
    let chi = chromatic_number_bruteforce(&g);
    assert!(c.coloring.is_proper(&g));
    assert!(c.coloring.color_count <= chi + c.bound);

    // a bag missing an edge is refused
    let pw = PlanarWidthDecomposition { base: TreeDecomposition::single(set(&[0, 1, 2])), tags: vec![BagTag::Small] };
    assert!(ptw_color(&cycle(4), &edgeless, set(&[0, 1, 2, 3]), &pw, 2).is_err());
}

#[test]
fn experimental_ptw_layering_returns_independent_sets() {
    use hplanar_core::approx::experimental::baker_independent_set_ptw;
    let mut rng = ChaCha8Rng::seed_from_u64(27);
    let (mut checked, mut short) = (0, 0);
    for i in 0..200 {
        let q = [2, 3, 4][i % 3];
        let h = builtin("edgeless").unwrap();
        let n = rng.gen_range(1..=12);
        let num = rng.gen_range(1..4);
        let g = random_graph(&mut rng, n, num, 6);
        let x: VertexSet = (0..n).filter(|_| rng.gen_bool(0.8)).collect();
        if !(g.vertices() - x).iter().all(|v| (g.neighbors(v) - x).is_empty()) {
            continue;
        }
        let (k, pw) = torso_pw(&g, x);
        let run = baker_independent_set_ptw(&g, &h, x, &pw, k, &ratio(1, q as i64)).unwrap();
        assert!(is_independent(&g, run.result));
        if run.result.len() < baker_floor(independence_number_bruteforce(&g), q) {
            short += 1;
        }
        checked += 1;
    }
    assert!(checked > 100, "{checked}");
    println!("{checked} instances, {short} below the target ratio");
}
