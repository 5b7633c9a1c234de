use hplanar::format::{
    cnf_text, graph_json, graph_text, parse_cnf, parse_decomposition, parse_graph, parse_graph_text, parse_vertex_set,
    DecompositionJson,
};
use hplanar_core::decomposition::planar_treewidth_exact;
use hplanar_core::generators::{random_graph, random_planar, with_random_weights};
use hplanar_core::hardness::random_planar_cnf;
use hplanar_core::planarity::is_planar;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn schema(name: &str) -> jsonschema::JSONSchema {
    let path = format!("{}/schemas/{name}", env!("CARGO_MANIFEST_DIR"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&v).unwrap()
}

proptest! {
    #[test]
    fn graphs_round_trip(seed in any::<u64>(), n in 0usize..20, planar in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = if planar { random_planar(&mut rng, n, 2 * n) } else { random_graph(&mut rng, n, 1, 3) };
        let g = with_random_weights(&mut rng, &g, 9, 4);
        let text = graph_text(&g);
        prop_assert_eq!(&parse_graph(&text).unwrap(), &g);
        prop_assert_eq!(graph_text(&parse_graph(&text).unwrap()), text);
        let rotation = is_planar(&g);
        let json = graph_json(&g, rotation.embedding());
        prop_assert_eq!(&parse_graph(&json).unwrap(), &g);
        prop_assert_eq!(graph_json(&parse_graph(&json).unwrap(), rotation.embedding()), json.clone());
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        prop_assert!(schema("graph.schema.json").is_valid(&v));
    }

    #[test]
    fn cnf_round_trips(seed in any::<u64>(), n in 1usize..6, m in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if let Some(phi) = random_planar_cnf(&mut rng, n, m, 50) {
            let text = cnf_text(&phi);
            let back = parse_cnf(&text).unwrap();
            prop_assert_eq!(back.clauses(), phi.clauses());
            prop_assert_eq!(cnf_text(&back), text);
        }
    }
}

#[test]
fn decompositions_round_trip_and_validate() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let s = schema("decomposition.schema.json");
    for n in 1..10 {
        let g = random_graph(&mut rng, n, 1, 2);
        let (_, pw) = planar_treewidth_exact(&g).unwrap();
        let j = DecompositionJson::from_planar_width(&pw);
        let text = serde_json::to_string(&j).unwrap();
        assert!(s.is_valid(&serde_json::from_str(&text).unwrap()));
        let back = parse_decomposition(&text).unwrap().to_planar_width(n).unwrap();
        assert_eq!(back.base.bags, pw.base.bags);
        assert_eq!(back.base.edges, pw.base.edges);
        assert_eq!(back.tags, pw.tags);
    }
}

#[test]
fn errors_name_the_offending_element() {
    let e = parse_graph_text("3 2\n0 1\n1 7\n").unwrap_err().to_string();
    assert!(e.contains("line 3") && e.contains('7'), "{e}");
    let e = parse_graph_text("3 2\n0 1\n").unwrap_err().to_string();
    assert!(e.contains('2'), "{e}");
    let e = parse_graph_text("2 1\n0 1 -1/2\n").unwrap_err().to_string();
    assert!(e.contains("line 2"), "{e}");
    let e = parse_graph_text("2 2\n0 1\n1 0\n").unwrap_err().to_string();
    assert!(e.contains("line 3"), "{e}");
    let e = parse_vertex_set("0,4", 3, "--x").unwrap_err().to_string();
    assert!(e.contains("--x") && e.contains('4'), "{e}");
    let e = parse_cnf("p cnf 2 1\n1 3 0\n").unwrap_err().to_string();
    assert!(e.contains('3'), "{e}");
    assert!(parse_graph("{\"n\": 2, \"m\": 0, \"edges\": [], \"extra\": 1}").is_err());
}

#[test]
fn comments_and_weights_parse() {
    let g = parse_graph_text("# a weighted triangle\n3 3\n0 1 3/2\n1 2\n0 2 4/8 # halves\n").unwrap();
    assert_eq!(g.m(), 3);
    assert_eq!(g.weight(0, 2).to_string(), "1/2");
    assert_eq!(g.weight(1, 2).to_string(), "1");
}
