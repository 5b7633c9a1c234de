//! Text and JSON formats for graphs, vertex sets, decompositions,
//! elimination sequences and CNF formulas.
//!
//! Graph text format: a header `n m`, then `m` lines `u v [p/q]`. Blank
//! lines and lines starting with `#` are ignored. JSON mirrors the same
//! fields: `{"n": .., "m": .., "edges": [{"u": .., "v": .., "weight": "p/q"}]}`
//! with `weight` omitted for unit edges, plus an optional `rotation` (per
//! vertex cyclic neighbour list) on output.

use std::fmt::Write as _;

use hplanar_core::decomposition::{BagTag, EliminationSequence, PlanarWidthDecomposition, TreeDecomposition};
use hplanar_core::hardness::{Literal, PlanarCnf};
use hplanar_core::planarity::RotationSystem;
use hplanar_core::{Graph, VertexSet, Weight, MAX_VERTICES};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A parse failure naming the offending element.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("{what}: {message}")]
pub struct FormatError {
    pub what: String,
    pub message: String,
}

fn fail<T>(what: impl Into<String>, message: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError {
        what: what.into(),
        message: message.into(),
    })
}

pub fn parse_weight(s: &str, what: &str) -> Result<Weight, FormatError> {
    let w: Weight = s.parse().or_else(|_| fail(what, format!("`{s}` is not a rational p/q")))?;
    Ok(w)
}

/// `p/q` in lowest terms, or `p` when `q = 1`.
pub fn weight_string(w: &Weight) -> String {
    w.to_string()
}

fn build_graph(
    n: usize,
    edges: impl IntoIterator<Item = (String, usize, usize, Option<Weight>)>,
) -> Result<Graph, FormatError> {
    if n > MAX_VERTICES {
        return fail("header", format!("{n} vertices exceeds the maximum of {MAX_VERTICES}"));
    }
    let mut b = Graph::builder(n).map_err(|e| FormatError {
        what: "header".into(),
        message: e.to_string(),
    })?;
    for (what, u, v, w) in edges {
        let r = match w {
            Some(w) => b.add_weighted_edge(u, v, w).map(|_| ()),
            None => b.add_edge(u, v).map(|_| ()),
        };
        r.map_err(|e| FormatError {
            what,
            message: e.to_string(),
        })?;
    }
    Ok(b.build())
}

pub fn parse_graph_text(text: &str) -> Result<Graph, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let Some((hl, header)) = lines.next() else {
        return fail("header", "empty input");
    };
    let head: Vec<&str> = header.split_whitespace().collect();
    let [n, m] = head[..] else {
        return fail(format!("line {hl}"), "header must be `n m`");
    };
    let n: usize = n.parse().or_else(|_| fail(format!("line {hl}"), format!("bad vertex count `{n}`")))?;
    let m: usize = m.parse().or_else(|_| fail(format!("line {hl}"), format!("bad edge count `{m}`")))?;
    let mut edges = Vec::with_capacity(m);
    for (ln, line) in lines {
        let what = format!("line {ln}");
        let parts: Vec<&str> = line.split_whitespace().collect();
        if !(2..=3).contains(&parts.len()) {
            return fail(what, "edge must be `u v [p/q]`");
        }
        let u: usize = parts[0].parse().or_else(|_| fail(&what, format!("bad vertex `{}`", parts[0])))?;
        let v: usize = parts[1].parse().or_else(|_| fail(&what, format!("bad vertex `{}`", parts[1])))?;
        let w = parts.get(2).map(|s| parse_weight(s, &what)).transpose()?;
        edges.push((what, u, v, w));
    }
    if edges.len() != m {
        return fail("header", format!("declares {m} edges but {} follow", edges.len()));
    }
    build_graph(n, edges)
}

pub fn graph_text(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        match g.explicit_weight(u, v) {
            Some(w) => writeln!(out, "{u} {v} {}", weight_string(w)),
            None => writeln!(out, "{u} {v}"),
        }
        .expect("writing to a string");
    }
    out
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct EdgeJson {
    pub u: usize,
    pub v: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub n: usize,
    pub m: usize,
    pub edges: Vec<EdgeJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<Vec<Vec<usize>>>,
}

impl GraphJson {
    pub fn from_graph(g: &Graph, rotation: Option<&RotationSystem>) -> GraphJson {
        GraphJson {
            n: g.n(),
            m: g.m(),
            edges: g
                .edges()
                .into_iter()
                .map(|(u, v)| EdgeJson {
                    u,
                    v,
                    weight: g.explicit_weight(u, v).map(weight_string),
                })
                .collect(),
            rotation: rotation.map(|r| r.rotations().to_vec()),
        }
    }

    pub fn to_graph(&self) -> Result<Graph, FormatError> {
        if self.edges.len() != self.m {
            return fail("m", format!("declares {} edges but {} are listed", self.m, self.edges.len()));
        }
        let mut edges = Vec::with_capacity(self.edges.len());
        for (i, e) in self.edges.iter().enumerate() {
            let what = format!("edges[{i}]");
            let w = e.weight.as_deref().map(|s| parse_weight(s, &what)).transpose()?;
            edges.push((what, e.u, e.v, w));
        }
        build_graph(self.n, edges)
    }
}

pub fn parse_graph_json(text: &str) -> Result<Graph, FormatError> {
    let j: GraphJson = serde_json::from_str(text).or_else(|e| fail("graph JSON", e.to_string()))?;
    j.to_graph()
}

/// Either format, told apart by a leading `{`.
pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    if text.trim_start().starts_with('{') {
        parse_graph_json(text)
    } else {
        parse_graph_text(text)
    }
}

pub fn graph_json(g: &Graph, rotation: Option<&RotationSystem>) -> String {
    serde_json::to_string_pretty(&GraphJson::from_graph(g, rotation)).expect("serializable")
}

/// Comma- or space-separated vertex list; `-` or the empty string is the
/// empty set.
pub fn parse_vertex_set(s: &str, n: usize, what: &str) -> Result<VertexSet, FormatError> {
    let s = s.trim();
    let mut out = VertexSet::new();
    if s.is_empty() || s == "-" {
        return Ok(out);
    }
    for tok in s.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
        let v: usize = tok.parse().or_else(|_| fail(what, format!("bad vertex `{tok}`")))?;
        if v >= n {
            return fail(what, format!("vertex {v} out of range for {n} vertices"));
        }
        out.insert(v);
    }
    Ok(out)
}

/// Layers separated by `;`, vertices by `,`.
pub fn parse_layers(s: &str, n: usize, what: &str) -> Result<EliminationSequence, FormatError> {
    let layers = s
        .split(';')
        .enumerate()
        .map(|(i, l)| parse_vertex_set(l, n, &format!("{what} layer {i}")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(EliminationSequence { layers })
}

pub fn set_string(s: VertexSet) -> String {
    s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

#[derive(Serialize, Deserialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum TagJson {
    Small,
    Planar,
}

/// `nodes` lists node ids `0..len`; `edges` joins nodes; `bags[i]` is the
/// bag of node `i`; `tags` is present for planar-width decompositions.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct DecompositionJson {
    pub nodes: Vec<usize>,
    pub edges: Vec<[usize; 2]>,
    pub bags: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tags: Option<Vec<TagJson>>,
}

impl DecompositionJson {
    pub fn from_tree(td: &TreeDecomposition) -> Self {
        DecompositionJson {
            nodes: (0..td.bags.len()).collect(),
            edges: td.edges.iter().map(|&(a, b)| [a, b]).collect(),
            bags: td.bags.iter().map(|b| b.to_vec()).collect(),
            tags: None,
        }
    }

    pub fn from_planar_width(pw: &PlanarWidthDecomposition) -> Self {
        let mut d = Self::from_tree(&pw.base);
        d.tags = Some(
            pw.tags
                .iter()
                .map(|t| match t {
                    BagTag::Small => TagJson::Small,
                    BagTag::PlanarTorso => TagJson::Planar,
                })
                .collect(),
        );
        d
    }

    pub fn to_tree(&self, n: usize) -> Result<TreeDecomposition, FormatError> {
        if self.nodes != (0..self.bags.len()).collect::<Vec<_>>() {
            return fail("nodes", "must list 0..number of bags in order");
        }
        let mut bags = Vec::with_capacity(self.bags.len());
        for (i, b) in self.bags.iter().enumerate() {
            let mut s = VertexSet::new();
            for &v in b {
                if v >= n {
                    return fail(format!("bags[{i}]"), format!("vertex {v} out of range for {n} vertices"));
                }
                s.insert(v);
            }
            bags.push(s);
        }
        for (i, &[a, b]) in self.edges.iter().enumerate() {
            if a >= bags.len() || b >= bags.len() {
                return fail(format!("edges[{i}]"), format!("node {} does not exist", a.max(b)));
            }
        }
        Ok(TreeDecomposition {
            bags,
            edges: self.edges.iter().map(|&[a, b]| (a, b)).collect(),
        })
    }

    pub fn to_planar_width(&self, n: usize) -> Result<PlanarWidthDecomposition, FormatError> {
        let base = self.to_tree(n)?;
        let Some(tags) = &self.tags else {
            return fail("tags", "a planar-width decomposition needs tags");
        };
        if tags.len() != base.bags.len() {
            return fail("tags", format!("{} tags for {} bags", tags.len(), base.bags.len()));
        }
        let tags = tags
            .iter()
            .map(|t| match t {
                TagJson::Small => BagTag::Small,
                TagJson::Planar => BagTag::PlanarTorso,
            })
            .collect();
        Ok(PlanarWidthDecomposition { base, tags })
    }
}

pub fn parse_decomposition(text: &str) -> Result<DecompositionJson, FormatError> {
    serde_json::from_str(text).or_else(|e| fail("decomposition JSON", e.to_string()))
}

/// DIMACS-style CNF: `c` comment lines, a `p cnf n m` header and clauses as
/// signed 1-based literals terminated by `0`.
pub fn parse_cnf(text: &str) -> Result<PlanarCnf, FormatError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Vec<Literal>> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let what = format!("line {}", i + 1);
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            match parts[..] {
                ["cnf", n, m] => {
                    let n = n.parse().or_else(|_| fail(&what, format!("bad variable count `{n}`")))?;
                    let m = m.parse().or_else(|_| fail(&what, format!("bad clause count `{m}`")))?;
                    header = Some((n, m));
                }
                _ => return fail(what, "header must be `p cnf n m`"),
            }
            continue;
        }
        let Some((n, _)) = header else {
            return fail(what, "clause before the `p cnf` header");
        };
        for tok in line.split_whitespace() {
            let x: i64 = tok.parse().or_else(|_| fail(&what, format!("bad literal `{tok}`")))?;
            if x == 0 {
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            let var = x.unsigned_abs() as usize - 1;
            if var >= n {
                return fail(&what, format!("variable {} exceeds the declared {n}", var + 1));
            }
            current.push(Literal { var, positive: x > 0 });
        }
    }
    let Some((n, m)) = header else {
        return fail("header", "missing `p cnf n m`");
    };
    if !current.is_empty() {
        return fail("last clause", "missing terminating 0");
    }
    if clauses.len() != m {
        return fail("header", format!("declares {m} clauses but {} follow", clauses.len()));
    }
    PlanarCnf::new(n, clauses).or_else(|e| fail("formula", e.to_string()))
}

pub fn cnf_text(phi: &PlanarCnf) -> String {
    let mut out = format!("p cnf {} {}\n", phi.n_vars(), phi.clauses().len());
    for c in phi.clauses() {
        for l in c {
            let x = l.var as i64 + 1;
            write!(out, "{} ", if l.positive { x } else { -x }).expect("writing to a string");
        }
        out.push_str("0\n");
    }
    out
}
