//! Argument parsing and dispatch for the `hplanar` binary.
//!
//! Exit status: 0 success or true, 1 false or absent, 2 input error,
//! 3 ceiling exceeded, 4 internal fault.

use std::ffi::OsString;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use hplanar_core::approx::experimental::baker_independent_set_ptw;
use hplanar_core::approx::{additive_color, baker_independent_set, ptd_color, ptw_color, AdditiveColoring};
use hplanar_core::decomposition::{
    planar_treedepth_exact_with, verify_elimination_sequence, verify_planar_width, PTD_CEILING,
};
use hplanar_core::generators::{apex_grid, complete, complete_bipartite, grid, wall};
use hplanar_core::graph::{is_unbreakable, torso, Unbreakability, UNBREAKABLE_CEILING};
use hplanar_core::hardness::{equivalence_harness, random_planar_cnf, reduce};
use hplanar_core::hclass::{builtin, HClass};
use hplanar_core::matching::{fkt_pmm, hplanar_pmm_traced, pmm_bruteforce_within, PmmStep, PMM_BRUTE_CEILING};
use hplanar_core::minor::{find_minor_with, MINOR_HOST_CEILING, MINOR_PATTERN_CEILING};
use hplanar_core::modulator::{
    big_leaf_search, brute_force_planar_modulator, planar_modulator_exists, self_reduce_modulator,
    verify_planar_modulator, ModulatorCheck, ModulatorFault, PlanarModulator, MODULATOR_CEILING,
};
use hplanar_core::planarity::is_planar;
use hplanar_core::{Error, Graph, VertexSet, Weight};

use crate::format::{
    cnf_text, graph_json, graph_text, parse_cnf, parse_decomposition, parse_graph, parse_layers, parse_vertex_set,
    parse_weight, set_string, FormatError,
};

#[derive(Parser, Debug)]
#[command(name = "hplanar", version, about = "Planar H-modulators: searches, certificates, counting and approximation")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Vertex ceiling for the exponential routine of the command (each
    /// routine has its own default).
    #[arg(long, global = true)]
    pub ceiling: Option<usize>,
    /// Worker thread cap. All routines currently run on one thread.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: u32,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct ClassArgs {
    /// Graph class H: empty, edgeless, forests, bipartite, planar, chordal,
    /// cluster, K4 (complete_K4_only), perfect or all.
    #[arg(long, default_value = "empty")]
    pub hclass: String,
    /// Restrict H to members with at most this many vertices.
    #[arg(long)]
    pub hsize: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Verify a planar H-modulator.
    CheckModulator {
        /// Graph file, `-` for stdin.
        #[arg(default_value = "-")]
        input: String,
        #[command(flatten)]
        class: ClassArgs,
        /// Modulator vertices, comma separated.
        #[arg(long)]
        x: String,
    },
    /// Search for a planar H-modulator.
    FindModulator {
        #[arg(value_enum)]
        method: FindMethod,
        #[arg(default_value = "-")]
        input: String,
        #[command(flatten)]
        class: ClassArgs,
        /// Unbreakability threshold for `bigleaf`.
        #[arg(long, default_value_t = 4)]
        a: usize,
    },
    /// Exact H-planar treedepth with a certifying elimination sequence.
    Ptd {
        #[arg(default_value = "-")]
        input: String,
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, default_value_t = 3)]
        max_depth: usize,
    },
    /// Verify a planar-width decomposition of the graph (or of the torso of
    /// `--x`).
    PtwVerify {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long)]
        decomposition: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        x: Option<String>,
        #[command(flatten)]
        class: ClassArgs,
    },
    /// Count perfect matchings (weighted).
    Pmm {
        #[arg(value_enum)]
        method: PmmMethod,
        #[arg(default_value = "-")]
        input: String,
        #[command(flatten)]
        class: ClassArgs,
        /// Modulator for `hplanar`; searched for when omitted.
        #[arg(long)]
        x: Option<String>,
        /// Print the reduction steps of `hplanar`.
        #[arg(long)]
        transcript: bool,
    },
    /// Layered (1 - epsilon)-approximate independent set.
    BakerIs {
        #[arg(default_value = "-")]
        input: String,
        #[command(flatten)]
        class: ClassArgs,
        /// Modulator; searched for when omitted.
        #[arg(long)]
        x: Option<String>,
        /// Rational in (0, 1), as p/q.
        #[arg(long)]
        epsilon: String,
        /// Layer the planar bags of a planar-width decomposition instead
        /// (unproven; needs --decomposition, --k and --x).
        #[arg(long)]
        experimental: bool,
        #[arg(long)]
        decomposition: Option<PathBuf>,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Proper coloring with an additive bound over chi(G).
    Color {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long, value_enum, default_value_t = ColorMode::Flat)]
        mode: ColorMode,
        #[command(flatten)]
        class: ClassArgs,
        /// Modulator for `flat` and `ptw`; searched for in `flat` when omitted.
        #[arg(long)]
        x: Option<String>,
        /// Elimination layers for `ptd`, e.g. `0,1;2,3`; computed when omitted.
        #[arg(long)]
        layers: Option<String>,
        #[arg(long)]
        decomposition: Option<PathBuf>,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Generate graphs and formulas.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// Run the satisfiability / modulator equivalence check on a CNF file.
    HardnessCheck {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Test (s, c)-unbreakability.
    Unbreakable {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        c: usize,
    },
    /// Search for a minor: `K<n>`, `K<a>,<b>`, `grid<k>x<r>` or a graph file.
    Minor {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long)]
        pattern: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum GenCommand {
    /// k x r grid, row-major.
    Grid { k: usize, r: usize },
    /// Elementary wall of odd height r.
    Wall { r: usize },
    /// k x k grid plus a universal vertex (last index).
    Apex { k: usize },
    /// Random restricted planar formula and its reduced graph.
    Hardness {
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        clauses: usize,
        #[arg(long)]
        seed: u64,
        /// Write the formula here and only the graph to stdout.
        #[arg(long)]
        cnf_out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FindMethod {
    Brute,
    Bigleaf,
    Selfreduce,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PmmMethod {
    Brute,
    Fkt,
    Hplanar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ColorMode {
    Flat,
    Ptd,
    Ptw,
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Ceiling(String),
    Internal(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Ceiling(_) => 3,
            CliError::Internal(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Ceiling(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::CeilingExceeded { .. } => CliError::Ceiling(e.to_string()),
            Error::ContractBreach(_) | Error::OracleFault(_) => CliError::Internal(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError::Input(e.to_string())
    }
}

/// What a command reports: exit status plus text and JSON renderings.
pub struct Outcome {
    pub code: i32,
    pub text: String,
    pub json: Value,
}

impl Outcome {
    fn new(code: i32, text: String, json: Value) -> Self {
        Outcome { code, text, json }
    }
}

struct Ctx<'a> {
    stdin: &'a mut dyn Read,
    stdin_used: bool,
    ceiling: Option<usize>,
}

impl Ctx<'_> {
    fn read(&mut self, path: &str) -> Result<String, CliError> {
        if path == "-" {
            if self.stdin_used {
                return Err(CliError::Input("stdin can only be read once".into()));
            }
            self.stdin_used = true;
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
            Ok(s)
        } else {
            std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))
        }
    }

    fn graph(&mut self, path: &str) -> Result<Graph, CliError> {
        let text = self.read(path)?;
        parse_graph(&text).map_err(|e| CliError::Input(format!("{}: {e}", display_path(path))))
    }

    fn ceiling(&self, default: usize) -> usize {
        self.ceiling.unwrap_or(default)
    }
}

fn display_path(path: &str) -> &str {
    if path == "-" {
        "stdin"
    } else {
        path
    }
}

fn class(args: &ClassArgs) -> Result<HClass, CliError> {
    let name = match args.hclass.as_str() {
        "all" => "all_graphs",
        "K4" | "k4" => "complete_K4_only",
        other => other,
    };
    let h = builtin(name).map_err(|_| CliError::Input(format!("--hclass: unknown class `{}`", args.hclass)))?;
    Ok(match args.hsize {
        Some(k) => h.restrict_to_size(k).into_class(),
        None => h,
    })
}

fn vertex_set(s: &str, g: &Graph, flag: &str) -> Result<VertexSet, CliError> {
    Ok(parse_vertex_set(s, g.n(), flag)?)
}

fn epsilon(s: &str) -> Result<Weight, CliError> {
    Ok(parse_weight(s, "--epsilon")?)
}

/// The given modulator, verified, or the least one found by exhaustive
/// search.
fn modulator(ctx: &Ctx, g: &Graph, h: &HClass, x: Option<&str>) -> Result<PlanarModulator, CliError> {
    match x {
        Some(s) => {
            let x = vertex_set(s, g, "--x")?;
            match verify_planar_modulator(g, h, x)? {
                ModulatorCheck::Valid(m) => Ok(m),
                ModulatorCheck::Invalid(f) => Err(CliError::Input(format!("--x: {}", fault_text(&f)))),
            }
        }
        None => brute_force_planar_modulator(g, h, ctx.ceiling(MODULATOR_CEILING))?
            .ok_or_else(|| CliError::Input(format!("input graph has no planar {}-modulator", h.name))),
    }
}

fn fault_text(f: &ModulatorFault) -> String {
    match f {
        ModulatorFault::NotASubset => "not a subset of the vertices".into(),
        ModulatorFault::NonPlanarTorso(w) => {
            format!("torso is not planar ({:?} subdivision on {})", w.kind, set_string(w.branch_vertices))
        }
        ModulatorFault::ComponentOutsideClass(c) => format!("component {{{}}} is outside the class", set_string(*c)),
    }
}

fn set_json(s: VertexSet) -> Value {
    json!(s.to_vec())
}

/// Re-checks a found modulator and reports each verified condition.
fn verification_transcript(g: &Graph, h: &HClass, m: &PlanarModulator) -> Result<Vec<String>, CliError> {
    match verify_planar_modulator(g, h, m.x)? {
        ModulatorCheck::Valid(v) => {
            let t = torso(g, m.x);
            let mut lines = vec![format!(
                "torso on {} vertices with {} edges is planar",
                m.x.len(),
                t.induced(m.x).0.m()
            )];
            for c in &v.components {
                lines.push(format!("component {{{}}} is in {}", set_string(*c), h.name));
            }
            Ok(lines)
        }
        ModulatorCheck::Invalid(f) => Err(CliError::Internal(format!("found modulator fails verification: {}", fault_text(&f)))),
    }
}

fn modulator_outcome(
    g: &Graph,
    h: &HClass,
    m: Option<&PlanarModulator>,
    extra: Value,
) -> Result<Outcome, CliError> {
    Ok(match m {
        Some(m) => {
            let lines = verification_transcript(g, h, m)?;
            let mut text = format!("modulator {}\n", set_string(m.x));
            for l in &lines {
                text.push_str("  ");
                text.push_str(l);
                text.push('\n');
            }
            Outcome::new(
                0,
                text,
                json!({"command": "find-modulator", "class": h.name, "found": true, "x": set_json(m.x),
                       "components": m.components.iter().map(|&c| set_json(c)).collect::<Vec<_>>(),
                       "verification": lines, "details": extra}),
            )
        }
        None => Outcome::new(
            1,
            "absent\n".into(),
            json!({"command": "find-modulator", "class": h.name, "found": false, "details": extra}),
        ),
    })
}

fn coloring_outcome(command: &str, mode: &str, c: &AdditiveColoring) -> Outcome {
    let mut text = format!(
        "colors {}\ncomponent_colors {}\nextra {}\nbound {}\n",
        c.coloring.color_count, c.component_colors, c.extra, c.bound
    );
    text.push_str("coloring ");
    text.push_str(&c.coloring.colors.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
    text.push('\n');
    Outcome::new(
        0,
        text,
        json!({"command": command, "mode": mode, "colors": c.coloring.color_count,
               "component_colors": c.component_colors, "extra": c.extra, "bound": c.bound,
               "coloring": c.coloring.colors}),
    )
}

fn step_json(step: &PmmStep) -> (String, Value) {
    match step {
        PmmStep::OddOrder { part } => (
            format!("odd-order {{{}}}", set_string(*part)),
            json!({"step": "odd_order", "part": set_json(*part)}),
        ),
        PmmStep::CutVertex { at, odd_side } => (
            format!("cut-vertex {at} odd-side {}", odd_side.map_or("none".into(), |s| format!("{{{}}}", set_string(s)))),
            json!({"step": "cut_vertex", "at": at, "odd_side": odd_side.map(set_json)}),
        ),
        PmmStep::Substitution(s) => {
            let p: Vec<Value> = s
                .p
                .iter()
                .map(|(g, w)| json!({"gamma": set_json(*g), "value": w.to_string()}))
                .collect();
            let gadget = s.gadget.as_ref().map(|g| g.graph.n());
            (
                format!(
                    "substitution boundary [{}] removed {{{}}} gadget {}",
                    s.boundary.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","),
                    set_string(s.removed),
                    gadget.map_or("none (combined directly)".into(), |n| format!("on {n} vertices"))
                ),
                json!({"step": "substitution", "boundary": s.boundary, "removed": set_json(s.removed),
                       "p": p, "gadget_vertices": gadget}),
            )
        }
        PmmStep::Expansion { block, at } => (
            format!("expansion block {{{}}} at {at}", set_string(*block)),
            json!({"step": "expansion", "block": set_json(*block), "at": at}),
        ),
        PmmStep::Fkt { part, value } => (
            format!("fkt {{{}}} = {value}", set_string(*part)),
            json!({"step": "fkt", "part": set_json(*part), "value": value.to_string()}),
        ),
    }
}

fn run_command(cli: &Cli, ctx: &mut Ctx) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::CheckModulator { input, class: ca, x } => {
            let g = ctx.graph(input)?;
            let h = class(ca)?;
            let x = vertex_set(x, &g, "--x")?;
            Ok(match verify_planar_modulator(&g, &h, x)? {
                ModulatorCheck::Valid(m) => Outcome::new(
                    0,
                    "valid\n".into(),
                    json!({"command": "check-modulator", "class": h.name, "valid": true, "x": set_json(m.x),
                           "components": m.components.iter().map(|&c| set_json(c)).collect::<Vec<_>>()}),
                ),
                ModulatorCheck::Invalid(f) => Outcome::new(
                    1,
                    format!("invalid: {}\n", fault_text(&f)),
                    json!({"command": "check-modulator", "class": h.name, "valid": false, "fault": fault_text(&f)}),
                ),
            })
        }
        Command::FindModulator { method, input, class: ca, a } => {
            let g = ctx.graph(input)?;
            let h = class(ca)?;
            let ceiling = ctx.ceiling(MODULATOR_CEILING);
            match method {
                FindMethod::Brute => {
                    let m = brute_force_planar_modulator(&g, &h, ceiling)?;
                    modulator_outcome(&g, &h, m.as_ref(), json!({"method": "brute"}))
                }
                FindMethod::Bigleaf => {
                    let m = big_leaf_search(&g, &h, *a)?;
                    modulator_outcome(&g, &h, m.as_ref(), json!({"method": "bigleaf", "a": a}))
                }
                FindMethod::Selfreduce => {
                    let mut oracle = |q: &Graph| planar_modulator_exists(q, &h, ceiling);
                    let r = self_reduce_modulator(&g, &h, &mut oracle)?;
                    let details = match &r {
                        Some(r) => json!({"method": "selfreduce", "queries": r.queries, "largest_query": r.largest_query}),
                        None => json!({"method": "selfreduce"}),
                    };
                    modulator_outcome(&g, &h, r.as_ref().map(|r| &r.modulator), details)
                }
            }
        }
        Command::Ptd { input, class: ca, max_depth } => {
            let g = ctx.graph(input)?;
            let h = class(ca)?;
            match planar_treedepth_exact_with(&g, &h, *max_depth, ctx.ceiling(PTD_CEILING))? {
                Some((depth, seq)) => {
                    let layers: Vec<String> = seq.layers.iter().map(|&l| set_string(l)).collect();
                    Ok(Outcome::new(
                        0,
                        format!("depth {depth}\nlayers {}\n", layers.join(";")),
                        json!({"command": "ptd", "class": h.name, "depth": depth,
                               "layers": seq.layers.iter().map(|&l| set_json(l)).collect::<Vec<_>>()}),
                    ))
                }
                None => Ok(Outcome::new(
                    1,
                    format!("depth exceeds {max_depth}\n"),
                    json!({"command": "ptd", "class": h.name, "depth": Value::Null, "max_depth": max_depth}),
                )),
            }
        }
        Command::PtwVerify { input, decomposition, k, x, class: ca } => {
            let g = ctx.graph(input)?;
            let path = decomposition.display().to_string();
            let d = parse_decomposition(&ctx.read(&path)?).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
            let pw = d.to_planar_width(g.n()).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
            let (target, x) = match x {
                Some(s) => {
                    let x = vertex_set(s, &g, "--x")?;
                    let h = class(ca)?;
                    for c in hplanar_core::graph::components_within(g.adjacency(), g.vertices() - x) {
                        if !h.contains_within(g.adjacency(), c)? {
                            return Ok(Outcome::new(
                                1,
                                format!("invalid: component {{{}}} is outside {}\n", set_string(c), h.name),
                                json!({"command": "ptw-verify", "valid": false,
                                       "fault": format!("component {{{}}} outside the class", set_string(c))}),
                            ));
                        }
                    }
                    let (t, _) = torso(&g, x).induced(x);
                    // decompositions are over original indices; check on the torso's index space
                    let map: Vec<usize> = x.to_vec();
                    let mut back = vec![usize::MAX; g.n()];
                    for (i, &v) in map.iter().enumerate() {
                        back[v] = i;
                    }
                    let mut pw = pw.clone();
                    for bag in pw.base.bags.iter_mut() {
                        if !bag.is_subset(&x) {
                            return Err(CliError::Input(format!("{path}: bag holds vertices outside --x")));
                        }
                        *bag = bag.iter().map(|v| back[v]).collect();
                    }
                    (t, Some((x, pw)))
                }
                None => (g.clone(), None),
            };
            let pw = x.as_ref().map_or(&pw, |(_, p)| p);
            Ok(match verify_planar_width(&target, pw, *k) {
                Ok(()) => Outcome::new(0, "valid\n".into(), json!({"command": "ptw-verify", "valid": true, "k": k})),
                Err(f) => Outcome::new(
                    1,
                    format!("invalid: {f:?}\n"),
                    json!({"command": "ptw-verify", "valid": false, "k": k, "fault": format!("{f:?}")}),
                ),
            })
        }
        Command::Pmm { method, input, class: ca, x, transcript } => {
            let g = ctx.graph(input)?;
            match method {
                PmmMethod::Brute => {
                    let v = pmm_bruteforce_within(&g, g.vertices(), ctx.ceiling(PMM_BRUTE_CEILING))?;
                    Ok(Outcome::new(0, format!("{v}\n"), json!({"command": "pmm", "method": "brute", "value": v.to_string()})))
                }
                PmmMethod::Fkt => {
                    let v = fkt_pmm(&g)?;
                    Ok(Outcome::new(0, format!("{v}\n"), json!({"command": "pmm", "method": "fkt", "value": v.to_string()})))
                }
                PmmMethod::Hplanar => {
                    let h = class(ca)?;
                    let m = modulator(ctx, &g, &h, x.as_deref())?;
                    let run = hplanar_pmm_traced(&g, &h, &m)?;
                    let mut text = format!("{}\n", run.value);
                    let steps: Vec<(String, Value)> = run.steps.iter().map(step_json).collect();
                    if *transcript {
                        for (line, _) in &steps {
                            text.push_str(line);
                            text.push('\n');
                        }
                    }
                    let mut j = json!({"command": "pmm", "method": "hplanar", "class": h.name,
                                       "x": set_json(m.x), "value": run.value.to_string()});
                    if *transcript {
                        j["transcript"] = json!(steps.into_iter().map(|(_, v)| v).collect::<Vec<_>>());
                    }
                    Ok(Outcome::new(0, text, j))
                }
            }
        }
        Command::BakerIs { input, class: ca, x, epsilon: e, experimental, decomposition, k } => {
            let g = ctx.graph(input)?;
            let h = class(ca)?;
            let eps = epsilon(e)?;
            let run = if *experimental {
                let (Some(path), Some(k), Some(x)) = (decomposition, k, x) else {
                    return Err(CliError::Input("--experimental needs --decomposition, --k and --x".into()));
                };
                let x = vertex_set(x, &g, "--x")?;
                let path = path.display().to_string();
                let d = parse_decomposition(&ctx.read(&path)?).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
                let pw = d.to_planar_width(g.n()).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
                baker_independent_set_ptw(&g, &h, x, &pw, *k, &eps)?
            } else {
                let m = modulator(ctx, &g, &h, x.as_deref())?;
                baker_independent_set(&g, &h, &m, &eps)?
            };
            let guarantee = if *experimental { "measured only" } else { "size >= (1 - epsilon) * alpha" };
            Ok(Outcome::new(
                0,
                format!(
                    "size {}\nset {}\nk {}\nchosen {}\nsizes {}\nguarantee {guarantee}\n",
                    run.result.len(),
                    set_string(run.result),
                    run.k,
                    run.chosen,
                    run.sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")
                ),
                json!({"command": "baker-is", "class": h.name, "epsilon": run.epsilon.to_string(), "k": run.k,
                       "size": run.result.len(), "set": set_json(run.result), "chosen": run.chosen,
                       "sizes": run.sizes, "strata": run.strata.iter().map(|&s| set_json(s)).collect::<Vec<_>>(),
                       "experimental": experimental, "guarantee": guarantee}),
            ))
        }
        Command::Color { input, mode, class: ca, x, layers, decomposition, k } => {
            let g = ctx.graph(input)?;
            let h = class(ca)?;
            match mode {
                ColorMode::Flat => {
                    let m = modulator(ctx, &g, &h, x.as_deref())?;
                    Ok(coloring_outcome("color", "flat", &additive_color(&g, &h, &m)?))
                }
                ColorMode::Ptd => {
                    let seq = match layers {
                        Some(s) => {
                            let seq = parse_layers(s, g.n(), "--layers")?;
                            if let Err(f) = verify_elimination_sequence(&g, &h, &seq)? {
                                return Err(CliError::Input(format!("--layers: {f:?}")));
                            }
                            seq
                        }
                        None => {
                            planar_treedepth_exact_with(&g, &h, g.n().max(1), ctx.ceiling(PTD_CEILING))?
                                .ok_or_else(|| CliError::Input("no elimination sequence exists".into()))?
                                .1
                        }
                    };
                    Ok(coloring_outcome("color", "ptd", &ptd_color(&g, &h, &seq)?))
                }
                ColorMode::Ptw => {
                    let (Some(path), Some(k), Some(x)) = (decomposition, k, x) else {
                        return Err(CliError::Input("--mode ptw needs --decomposition, --k and --x".into()));
                    };
                    let x = vertex_set(x, &g, "--x")?;
                    let path = path.display().to_string();
                    let d = parse_decomposition(&ctx.read(&path)?).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
                    let pw = d.to_planar_width(g.n()).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
                    Ok(coloring_outcome("color", "ptw", &ptw_color(&g, &h, x, &pw, *k)?))
                }
            }
        }
        Command::Gen { what } => gen(cli, what),
        Command::HardnessCheck { input } => {
            let text = ctx.read(input)?;
            let phi = parse_cnf(&text).map_err(|e| CliError::Input(format!("{}: {e}", display_path(input))))?;
            let out = reduce(&phi)?;
            let v = equivalence_harness(&phi, &out)?;
            let decoded = v
                .decoded
                .as_ref()
                .map(|a| a.iter().map(|&b| if b { '1' } else { '0' }).collect::<String>());
            Ok(Outcome::new(
                if v.pass { 0 } else { 1 },
                format!(
                    "{}\nsatisfiable {}\nmodulator {}\n{}",
                    if v.pass { "PASS" } else { "FAIL" },
                    v.satisfiable,
                    v.modulator_exists,
                    decoded.as_ref().map_or(String::new(), |d| format!("decoded {d}\n"))
                ),
                json!({"command": "hardness-check", "pass": v.pass, "satisfiable": v.satisfiable,
                       "modulator_exists": v.modulator_exists, "forward_ok": v.forward_ok, "decoded": v.decoded,
                       "vertices": out.graph.n()}),
            ))
        }
        Command::Unbreakable { input, s, c } => {
            let g = ctx.graph(input)?;
            Ok(match is_unbreakable(&g, *s, *c, ctx.ceiling(UNBREAKABLE_CEILING))? {
                Unbreakability::Unbreakable => Outcome::new(
                    0,
                    "unbreakable\n".into(),
                    json!({"command": "unbreakable", "s": s, "c": c, "unbreakable": true}),
                ),
                Unbreakability::Witness(sep) => Outcome::new(
                    1,
                    format!("breakable left {} right {}\n", set_string(sep.left), set_string(sep.right)),
                    json!({"command": "unbreakable", "s": s, "c": c, "unbreakable": false,
                           "left": set_json(sep.left), "right": set_json(sep.right)}),
                ),
            })
        }
        Command::Minor { input, pattern } => {
            let g = ctx.graph(input)?;
            let p = named_pattern(pattern).map_or_else(|| ctx.graph(pattern), Ok)?;
            let model = find_minor_with(&g, &p, MINOR_PATTERN_CEILING, ctx.ceiling(MINOR_HOST_CEILING))?;
            Ok(match model {
                Some(m) => Outcome::new(
                    0,
                    format!(
                        "found\n{}",
                        m.branch_sets
                            .iter()
                            .enumerate()
                            .map(|(i, s)| format!("{i}: {}\n", set_string(*s)))
                            .collect::<String>()
                    ),
                    json!({"command": "minor", "found": true,
                           "branch_sets": m.branch_sets.iter().map(|&s| set_json(s)).collect::<Vec<_>>()}),
                ),
                None => Outcome::new(1, "absent\n".into(), json!({"command": "minor", "found": false})),
            })
        }
    }
}

fn named_pattern(name: &str) -> Option<Graph> {
    if let Some(rest) = name.strip_prefix("grid") {
        let (k, r) = rest.split_once('x')?;
        return grid(k.parse().ok()?, r.parse().ok()?).ok();
    }
    let rest = name.strip_prefix('K')?;
    match rest.split_once(',') {
        Some((a, b)) => Some(complete_bipartite(a.parse().ok()?, b.parse().ok()?)),
        None if rest == "33" => Some(complete_bipartite(3, 3)),
        None => Some(complete(rest.parse().ok()?)),
    }
}

fn graph_outcome(cli: &Cli, g: &Graph) -> Outcome {
    let rotation = is_planar(g);
    match cli.format {
        OutputFormat::Text => Outcome::new(0, graph_text(g), Value::Null),
        OutputFormat::Json => {
            let s = graph_json(g, rotation.embedding());
            // bare graph JSON so the output pipes straight into other commands
            Outcome::new(0, String::new(), serde_json::from_str(&s).expect("own output parses"))
        }
    }
}

fn gen(cli: &Cli, what: &GenCommand) -> Result<Outcome, CliError> {
    match what {
        GenCommand::Grid { k, r } => Ok(graph_outcome(cli, &grid(*k, *r)?)),
        GenCommand::Wall { r } => Ok(graph_outcome(cli, &wall(*r)?.graph)),
        GenCommand::Apex { k } => Ok(graph_outcome(cli, &apex_grid(*k)?)),
        GenCommand::Hardness { vars, clauses, seed, cnf_out } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let Some(phi) = random_planar_cnf(&mut rng, *vars, *clauses, 1000) else {
                return Ok(Outcome::new(
                    1,
                    "no formula found\n".into(),
                    json!({"command": "gen hardness", "found": false}),
                ));
            };
            let out = reduce(&phi)?;
            let cnf = cnf_text(&phi);
            if let Some(path) = cnf_out {
                std::fs::write(path, &cnf).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            }
            let text = match cnf_out {
                Some(_) => graph_text(&out.graph),
                None => format!("{cnf}{}", graph_text(&out.graph)),
            };
            let graph: Value = serde_json::from_str(&graph_json(&out.graph, None)).expect("own output parses");
            Ok(Outcome::new(
                0,
                text,
                json!({"command": "gen hardness", "found": true, "seed": seed, "cnf": cnf, "graph": graph}),
            ))
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit status with what belongs on stdout and stderr.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let msg = e.render().to_string();
            return if code == 0 { (0, msg, String::new()) } else { (code, String::new(), msg) };
        }
    };
    let mut ctx = Ctx {
        stdin,
        stdin_used: false,
        ceiling: cli.ceiling,
    };
    match run_command(&cli, &mut ctx) {
        Ok(o) => {
            let out = match cli.format {
                OutputFormat::Text => o.text,
                OutputFormat::Json => {
                    let mut s = serde_json::to_string_pretty(&o.json).expect("serializable");
                    s.push('\n');
                    s
                }
            };
            (o.code, out, String::new())
        }
        Err(e) => (e.code(), String::new(), format!("error: {}\n", e.message())),
    }
}
