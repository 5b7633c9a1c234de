use std::io::Cursor;

use hplanar::cli::run;
use serde_json::Value;

fn hp(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut argv = vec!["hplanar"];
    argv.extend_from_slice(args);
    run(argv, &mut Cursor::new(stdin.as_bytes().to_vec()))
}

fn ok(args: &[&str], stdin: &str) -> String {
    let (code, out, err) = hp(args, stdin);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

fn report_schema() -> jsonschema::JSONSchema {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/schemas/report.schema.json");
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&v).unwrap()
}

fn temp_file(contents: &str) -> tempfile::NamedTempFile {
    let f = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(f.path(), contents).unwrap();
    f
}

#[test]
fn fkt_on_the_two_by_four_grid() {
    let g = ok(&["gen", "grid", "2", "4"], "");
    let f = temp_file(&g);
    let path = f.path().to_str().unwrap();
    assert_eq!(ok(&["pmm", "fkt", path], ""), "5\n");
    assert_eq!(ok(&["pmm", "brute", path], ""), "5\n");
    assert_eq!(ok(&["pmm", "hplanar", path, "--hclass", "all", "--hsize", "3"], ""), "5\n");
}

#[test]
fn whole_vertex_set_is_a_modulator_of_a_planar_graph() {
    let g = ok(&["gen", "wall", "3"], "");
    let n: usize = g.split_whitespace().next().unwrap().parse().unwrap();
    let all: Vec<String> = (0..n).map(|v| v.to_string()).collect();
    let (code, out, _) = hp(&["check-modulator", "--x", &all.join(",")], &g);
    assert_eq!((code, out.as_str()), (0, "valid\n"));
}

#[test]
fn apex_grid_has_no_bounded_modulator() {
    let g = ok(&["gen", "apex", "5"], "");
    let (code, out, _) = hp(&["find-modulator", "brute", "--hclass", "all", "--hsize", "5"], &g);
    assert_eq!((code, out.as_str()), (1, "absent\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(hp(&["--bogus"], "").0, 2);
    assert_eq!(hp(&["pmm", "fkt", "--nope"], "").0, 2);
    // randomized generation needs a seed
    assert_eq!(hp(&["gen", "hardness", "--vars", "2", "--clauses", "2"], "").0, 2);
    assert_eq!(hp(&["pmm", "fkt"], "2 1\n0 5\n").0, 2);
    assert_eq!(hp(&["pmm", "fkt", "/nonexistent/graph"], "").0, 2);
    assert_eq!(hp(&["check-modulator", "--hclass", "wat", "--x", "0"], "1 0\n").0, 2);
    let (code, _, err) = hp(&["check-modulator", "--x", "0,9"], "3 0\n");
    assert_eq!(code, 2);
    assert!(err.contains("--x") && err.contains('9'), "{err}");
    let g = ok(&["gen", "apex", "5"], "");
    let (code, _, err) = hp(&["--ceiling", "10", "find-modulator", "brute"], &g);
    assert_eq!(code, 3, "{err}");
    assert!(err.contains("ceiling"));
    assert_eq!(hp(&["pmm", "fkt"], &ok(&["gen", "apex", "3"], "")).0, 2);
    assert_eq!(hp(&["--help"], "").0, 0);
}

#[test]
fn outputs_are_deterministic() {
    let cases: &[&[&str]] = &[
        &["gen", "hardness", "--vars", "3", "--clauses", "3", "--seed", "9"],
        &["--format", "json", "gen", "hardness", "--vars", "3", "--clauses", "3", "--seed", "9"],
        &["--format", "json", "gen", "wall", "5"],
    ];
    for args in cases {
        assert_eq!(hp(args, ""), hp(args, ""));
    }
    let g = ok(&["gen", "grid", "3", "3"], "");
    let args = ["--format", "json", "find-modulator", "selfreduce", "--hclass", "all", "--hsize", "2"];
    assert_eq!(hp(&args, &g), hp(&args, &g));
    assert_ne!(
        ok(&["gen", "hardness", "--vars", "4", "--clauses", "4", "--seed", "1"], ""),
        ok(&["gen", "hardness", "--vars", "4", "--clauses", "4", "--seed", "2"], "")
    );
}

#[test]
fn json_reports_match_the_schema() {
    let schema = report_schema();
    let grid = ok(&["gen", "grid", "3", "3"], "");
    let apex = ok(&["gen", "apex", "3"], "");
    let td = temp_file(
        r#"{"nodes":[0,1],"edges":[[0,1]],"bags":[[0,1,2,3,4,5],[3,4,5,6,7,8]],"tags":["planar","planar"]}"#,
    );
    let td = td.path().to_str().unwrap().to_string();
    let cnf = temp_file("p cnf 2 2\n1 2 0\n-1 2 0\n");
    let cnf = cnf.path().to_str().unwrap().to_string();
    let runs: Vec<(Vec<&str>, &str)> = vec![
        (vec!["check-modulator", "--x", "0,1"], &grid),
        (vec!["check-modulator", "--x", "0,1,2,3,4,5,6,7,8"], &grid),
        (vec!["find-modulator", "brute", "--hclass", "all", "--hsize", "2"], &grid),
        (vec!["find-modulator", "bigleaf", "--hclass", "forests"], &grid),
        (vec!["find-modulator", "selfreduce", "--hclass", "all", "--hsize", "2"], &apex),
        (vec!["ptd", "--hclass", "bipartite"], &apex),
        (vec!["ptd", "--hclass", "empty", "--max-depth", "0"], &apex),
        (vec!["ptw-verify", "--decomposition", &td, "--k", "0"], &grid),
        (vec!["pmm", "fkt"], &grid),
        (vec!["pmm", "hplanar", "--hclass", "all", "--hsize", "3", "--transcript"], &grid),
        (vec!["baker-is", "--epsilon", "1/3"], &grid),
        (vec!["color", "--hclass", "forests"], &apex),
        (vec!["color", "--mode", "ptd", "--hclass", "edgeless"], &apex),
        (vec!["color", "--mode", "ptw", "--decomposition", &td, "--k", "0", "--x", "0,1,2,3,4,5,6,7,8"], &grid),
        (vec!["gen", "hardness", "--vars", "2", "--clauses", "2", "--seed", "3"], ""),
        (vec!["hardness-check", &cnf], ""),
        (vec!["unbreakable", "--s", "2", "--c", "1"], &grid),
        (vec!["minor", "--pattern", "K4"], &grid),
        (vec!["minor", "--pattern", "K5"], &grid),
    ];
    for (args, stdin) in runs {
        let mut full = vec!["--format", "json"];
        full.extend(args.iter().copied());
        let (code, out, err) = hp(&full, stdin);
        assert!(code <= 1, "{args:?}: {err}");
        let v: Value = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}\n{out}"));
        let msgs: Vec<String> = match schema.validate(&v) {
            Ok(()) => Vec::new(),
            Err(errors) => errors.map(|e| e.to_string()).collect(),
        };
        assert!(msgs.is_empty(), "{args:?}: {msgs:?}\n{out}");
    }
}

#[test]
fn hardness_files_pipe_into_the_check() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("phi.cnf");
    let cnf = cnf.to_str().unwrap();
    let graph = ok(&["gen", "hardness", "--vars", "2", "--clauses", "3", "--seed", "11", "--cnf-out", cnf], "");
    assert!(graph.lines().next().unwrap().split_whitespace().count() == 2);
    let (code, out, err) = hp(&["hardness-check", cnf], "");
    assert_eq!(code, 0, "{err}");
    assert!(out.starts_with("PASS"));
}

#[test]
fn json_graphs_pipe_between_commands() {
    let g = ok(&["--format", "json", "gen", "grid", "2", "4"], "");
    assert_eq!(ok(&["pmm", "fkt"], &g), "5\n");
}

#[test]
fn modulator_output_carries_a_transcript() {
    let g = ok(&["gen", "grid", "2", "3"], "");
    let out = ok(&["find-modulator", "brute", "--hclass", "all", "--hsize", "2"], &g);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("modulator 1,4"));
    assert!(lines.next().unwrap().contains("planar"));
    assert_eq!(lines.count(), 2);
}
