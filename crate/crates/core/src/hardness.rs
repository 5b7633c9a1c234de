//! Reduction from restricted planar SAT to planarity with `K4` components,
//! used as a stress generator: a formula is satisfiable exactly when the
//! reduced graph has a planar modulator for the class `{K4}`.

use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{components_within, Graph};
use crate::hclass::builtin;
use crate::modulator::{verify_planar_modulator, ModulatorSearch, MODULATOR_CEILING};
use crate::planarity::is_planar_adj;

/// Largest variable count [`sat_bruteforce`] enumerates.
pub const SAT_CEILING: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Literal {
        Literal { var, positive: true }
    }

    pub fn neg(var: usize) -> Literal {
        Literal { var, positive: false }
    }

    pub fn holds(&self, assignment: &[bool]) -> bool {
        assignment[self.var] == self.positive
    }
}

/// A CNF formula with clauses of two or three literals, each variable
/// occurring at most twice positively and twice negated, and a planar
/// variable-clause incidence graph. A literal may repeat inside a clause;
/// every copy counts as an occurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarCnf {
    n_vars: usize,
    clauses: Vec<Vec<Literal>>,
}

impl PlanarCnf {
    pub fn new(n_vars: usize, clauses: Vec<Vec<Literal>>) -> Result<PlanarCnf> {
        let mut count = alloc::vec![[0usize; 2]; n_vars];
        for (j, c) in clauses.iter().enumerate() {
            if !(2..=3).contains(&c.len()) {
                return Err(Error::InputFault(alloc::format!("clause {j} has {} literals", c.len())));
            }
            for l in c {
                if l.var >= n_vars {
                    return Err(Error::InputFault(alloc::format!(
                        "clause {j} uses variable {} of {n_vars}",
                        l.var
                    )));
                }
                count[l.var][usize::from(l.positive)] += 1;
            }
        }
        if let Some(i) = count.iter().position(|c| c[0] > 2 || c[1] > 2) {
            return Err(Error::InputFault(alloc::format!(
                "variable {i} occurs {} times positively and {} times negated",
                count[i][1],
                count[i][0]
            )));
        }
        let phi = PlanarCnf { n_vars, clauses };
        let g = phi.incidence_graph()?;
        if !is_planar_adj(g.adjacency(), g.vertices()) {
            return Err(Error::InputFault("incidence graph is not planar".into()));
        }
        Ok(phi)
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    /// `x_i = 2i`, `x̄_i = 2i + 1`, clause `j` at `2n + j`; literal vertices
    /// of one variable are adjacent.
    pub fn incidence_graph(&self) -> Result<Graph> {
        let n = 2 * self.n_vars;
        let mut b = Graph::builder(n + self.clauses.len())?;
        for i in 0..self.n_vars {
            b.add_edge(2 * i, 2 * i + 1)?;
        }
        for (j, c) in self.clauses.iter().enumerate() {
            for l in c {
                let v = 2 * l.var + usize::from(!l.positive);
                if !b.has_edge(v, n + j) {
                    b.add_edge(v, n + j)?;
                }
            }
        }
        Ok(b.build())
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        assignment.len() == self.n_vars && self.clauses.iter().all(|c| c.iter().any(|l| l.holds(assignment)))
    }
}

/// The least satisfying assignment in the order where variable 0 is the
/// lowest bit, or `None`.
pub fn satisfying_assignment(phi: &PlanarCnf) -> Result<Option<Vec<bool>>> {
    if phi.n_vars > SAT_CEILING {
        return Err(Error::CeilingExceeded {
            routine: "sat_bruteforce",
            size: phi.n_vars,
            ceiling: SAT_CEILING,
        });
    }
    for bits in 0u32..1 << phi.n_vars {
        let a: Vec<bool> = (0..phi.n_vars).map(|i| bits >> i & 1 == 1).collect();
        if phi.satisfied_by(&a) {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

pub fn sat_bruteforce(phi: &PlanarCnf) -> Result<bool> {
    Ok(satisfying_assignment(phi)?.is_some())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    /// `x_i` when `positive`, else `x̄_i`.
    Literal { var: usize, positive: bool },
    VariablePad { var: usize, index: usize },
    /// `slot` 0, 1, 2 for `u_j`, `v_j`, `w_j`.
    Clause { clause: usize, slot: usize },
    ClausePad { clause: usize, index: usize },
}

/// The reduced graph and the role of each vertex. Variable `i` owns
/// `5i..5i + 5` (`x_i`, `x̄_i`, then the three pads); the clauses follow in
/// order, each as `u_j, v_j, w_j` then its pads.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionOutput {
    pub graph: Graph,
    pub roles: Vec<Role>,
    /// `literal[i] = [x_i, x̄_i]`.
    pub literal: Vec<[usize; 2]>,
    pub variable_pads: Vec<[usize; 3]>,
    /// `[u_j, v_j, w_j]`.
    pub clause_vertices: Vec<[usize; 3]>,
    pub clause_pads: Vec<Vec<usize>>,
    /// `attached[j][t]`: the clause vertex joined to the `t`-th literal of
    /// clause `j`.
    pub attached: Vec<Vec<usize>>,
}

impl ReductionOutput {
    /// `R_i = {x_i, x̄_i} ∪ pads`.
    pub fn variable_clique(&self, i: usize) -> VertexSet {
        self.literal[i].iter().chain(&self.variable_pads[i]).copied().collect()
    }

    /// `R'_j = {u_j, v_j, w_j} ∪ Z_j`.
    pub fn clause_clique(&self, j: usize) -> VertexSet {
        self.clause_vertices[j].iter().chain(&self.clause_pads[j]).copied().collect()
    }

    /// Checks vertex and edge counts against `phi` and that the `w_j` of
    /// two-literal clauses see no literal vertex.
    pub fn check_counts(&self, phi: &PlanarCnf) -> core::result::Result<(), String> {
        let n = phi.n_vars;
        let m = phi.clauses.len();
        let pads: usize = phi.clauses.iter().map(|c| c.len()).sum();
        let occurrences = pads;
        let want_v = 5 * n + 3 * m + pads;
        if self.graph.n() != want_v || self.roles.len() != want_v {
            return Err(alloc::format!("{} vertices, expected {want_v}", self.graph.n()));
        }
        let z_edges: usize = phi.clauses.iter().map(|c| if c.len() == 3 { 3 + 9 } else { 1 + 6 }).sum();
        let want_e = 10 * n + 3 * m + occurrences + z_edges;
        let e = self.graph.m();
        if e != want_e {
            return Err(alloc::format!("{e} edges, expected {want_e}"));
        }
        let literals: VertexSet = self.literal.iter().flatten().copied().collect();
        for (j, c) in phi.clauses.iter().enumerate() {
            if self.clause_pads[j].len() != c.len() {
                return Err(alloc::format!("clause {j} has {} pads", self.clause_pads[j].len()));
            }
            if c.len() == 2 && self.graph.neighbors(self.clause_vertices[j][2]).intersects(&literals) {
                return Err(alloc::format!("w of two-literal clause {j} sees a literal vertex"));
            }
        }
        Ok(())
    }
}

/// Builds the reduced graph. The `t`-th literal of a clause is joined to
/// clause vertex `t`, so no clause vertex sees two literal vertices and
/// `w_j` stays free for two-literal clauses.
pub fn reduce(phi: &PlanarCnf) -> Result<ReductionOutput> {
    let n = phi.n_vars;
    let total = 5 * n + phi.clauses.iter().map(|c| 3 + c.len()).sum::<usize>();
    let mut b = Graph::builder(total)?;
    let mut roles = Vec::with_capacity(total);
    let mut literal = Vec::with_capacity(n);
    let mut variable_pads = Vec::with_capacity(n);
    for i in 0..n {
        let base = 5 * i;
        roles.push(Role::Literal { var: i, positive: true });
        roles.push(Role::Literal { var: i, positive: false });
        for index in 0..3 {
            roles.push(Role::VariablePad { var: i, index });
        }
        b.make_clique((base..base + 5).collect())?;
        literal.push([base, base + 1]);
        variable_pads.push([base + 2, base + 3, base + 4]);
    }
    let mut clause_vertices = Vec::new();
    let mut clause_pads = Vec::new();
    let mut attached = Vec::new();
    let mut next = 5 * n;
    for (j, c) in phi.clauses.iter().enumerate() {
        let uvw = [next, next + 1, next + 2];
        let z: Vec<usize> = (next + 3..next + 3 + c.len()).collect();
        for slot in 0..3 {
            roles.push(Role::Clause { clause: j, slot });
        }
        for index in 0..c.len() {
            roles.push(Role::ClausePad { clause: j, index });
        }
        b.make_clique((next..next + 3 + c.len()).collect())?;
        let mut at = Vec::with_capacity(c.len());
        for (t, l) in c.iter().enumerate() {
            b.add_edge(literal[l.var][usize::from(!l.positive)], uvw[t])?;
            at.push(uvw[t]);
        }
        clause_vertices.push(uvw);
        clause_pads.push(z);
        attached.push(at);
        next += 3 + c.len();
    }
    let out = ReductionOutput {
        graph: b.build(),
        roles,
        literal,
        variable_pads,
        clause_vertices,
        clause_pads,
        attached,
    };
    out.check_counts(phi).map_err(|e| Error::ContractBreach(alloc::format!("reduction: {e}")))?;
    Ok(out)
}

/// The modulator read off a satisfying assignment: everything outside the
/// chosen `K4`s. For variable `i` the clique avoids the true literal; for
/// each clause it is the first true literal's clause vertex with the pads
/// (plus `w_j` for two-literal clauses).
pub fn forward_modulator(phi: &PlanarCnf, out: &ReductionOutput, assignment: &[bool]) -> Result<VertexSet> {
    if !phi.satisfied_by(assignment) {
        return Err(Error::InvalidParameter("assignment does not satisfy the formula".into()));
    }
    let mut kept = VertexSet::new();
    for (i, &value) in assignment.iter().enumerate() {
        // x_i = true keeps x̄_i
        kept.insert(out.literal[i][usize::from(value)]);
        kept |= out.variable_pads[i].iter().copied().collect::<VertexSet>();
    }
    for (j, c) in phi.clauses.iter().enumerate() {
        let t = c.iter().position(|l| l.holds(assignment)).expect("satisfied");
        kept.insert(out.attached[j][t]);
        kept |= out.clause_pads[j].iter().copied().collect::<VertexSet>();
        if c.len() == 2 {
            kept.insert(out.clause_vertices[j][2]);
        }
    }
    Ok(out.graph.vertices() - kept)
}

/// Decodes a modulator: `x_i` is true when it lies outside the `K4` inside
/// `R_i`. Every component of `G - X` must sit inside exactly one `R_i` or
/// `R'_j`, and each of these must hold one.
pub fn decode_assignment(out: &ReductionOutput, x: VertexSet) -> Result<Vec<bool>> {
    let g = &out.graph;
    let n = out.literal.len();
    let cliques: Vec<VertexSet> = (0..n)
        .map(|i| out.variable_clique(i))
        .chain((0..out.clause_vertices.len()).map(|j| out.clause_clique(j)))
        .collect();
    let mut holder: Vec<Option<VertexSet>> = alloc::vec![None; cliques.len()];
    for c in components_within(g.adjacency(), g.vertices() - x) {
        let inside: Vec<usize> = (0..cliques.len()).filter(|&r| c.is_subset(&cliques[r])).collect();
        match inside[..] {
            [r] if holder[r].is_none() => holder[r] = Some(c),
            _ => {
                return Err(Error::ContractBreach(alloc::format!(
                    "component {c:?} is not confined to a single clique"
                )))
            }
        }
    }
    if let Some(r) = holder.iter().position(|h| h.is_none()) {
        return Err(Error::ContractBreach(alloc::format!("clique {r} holds no component")));
    }
    Ok((0..n)
        .map(|i| !holder[i].expect("checked").contains(out.literal[i][0]))
        .collect())
}

/// Outcome of one run of the equivalence harness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarnessVerdict {
    pub satisfiable: bool,
    pub modulator_exists: bool,
    /// Assignment decoded from the found modulator.
    pub decoded: Option<Vec<bool>>,
    /// Whether the modulator built from the brute-force assignment passed
    /// the verifier (`None` when unsatisfiable).
    pub forward_ok: Option<bool>,
    pub pass: bool,
}

/// Compares brute-force satisfiability with modulator existence on the
/// reduced graph; satisfiable instances also check the modulator built from
/// an assignment and the assignment decoded from the found modulator.
pub fn equivalence_harness(phi: &PlanarCnf, out: &ReductionOutput) -> Result<HarnessVerdict> {
    out.check_counts(phi)
        .map_err(|e| Error::InvalidCertificate(alloc::format!("reduced graph breaks its invariants: {e}")))?;
    let g = &out.graph;
    if g.n() > MODULATOR_CEILING {
        return Err(Error::CeilingExceeded {
            routine: "equivalence_harness",
            size: g.n(),
            ceiling: MODULATOR_CEILING,
        });
    }
    let h = builtin("complete_K4_only")?;
    let assignment = satisfying_assignment(phi)?;
    let forward_ok = match &assignment {
        Some(a) => Some(verify_planar_modulator(g, &h, forward_modulator(phi, out, a)?)?.is_valid()),
        None => None,
    };
    let found = ModulatorSearch::new(g, &h).find(g.vertices(), VertexSet::new(), VertexSet::new(), usize::MAX)?;
    let decoded = match found {
        Some(x) => {
            if !verify_planar_modulator(g, &h, x)?.is_valid() {
                return Err(Error::ContractBreach("search returned a set the verifier rejects".into()));
            }
            Some(decode_assignment(out, x)?)
        }
        None => None,
    };
    let satisfiable = assignment.is_some();
    let modulator_exists = decoded.is_some();
    let pass = satisfiable == modulator_exists
        && forward_ok != Some(false)
        && decoded.as_ref().map_or(true, |a| phi.satisfied_by(a));
    Ok(HarnessVerdict {
        satisfiable,
        modulator_exists,
        decoded,
        forward_ok,
        pass,
    })
}

/// Random formula with `n_vars` variables and `n_clauses` clauses, by
/// rejection: clause sizes and literals are drawn among those with spare
/// occurrences, and draws with a non-planar incidence graph or a dead end
/// are retried. `None` after `attempts` failures.
pub fn random_planar_cnf<R: Rng + ?Sized>(
    rng: &mut R,
    n_vars: usize,
    n_clauses: usize,
    attempts: usize,
) -> Option<PlanarCnf> {
    'attempt: for _ in 0..attempts {
        let mut left = alloc::vec![[2usize; 2]; n_vars];
        let mut clauses = Vec::with_capacity(n_clauses);
        for _ in 0..n_clauses {
            let size = if rng.gen_bool(0.5) { 2 } else { 3 };
            let mut clause = Vec::with_capacity(size);
            for _ in 0..size {
                let open: Vec<Literal> = (0..n_vars)
                    .flat_map(|v| [Literal::neg(v), Literal::pos(v)])
                    .filter(|l| left[l.var][usize::from(l.positive)] > 0)
                    .collect();
                let Some(&l) = open.choose(rng) else {
                    continue 'attempt;
                };
                left[l.var][usize::from(l.positive)] -= 1;
                clause.push(l);
            }
            clauses.push(clause);
        }
        if let Ok(phi) = PlanarCnf::new(n_vars, clauses) {
            return Some(phi);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn occurrence_bounds_are_enforced() {
        let x = Literal::pos(0);
        assert!(PlanarCnf::new(1, alloc::vec![alloc::vec![x, x, x]]).is_err());
        assert!(PlanarCnf::new(1, alloc::vec![alloc::vec![x]]).is_err());
        assert!(PlanarCnf::new(1, alloc::vec![alloc::vec![x, Literal::pos(1)]]).is_err());
        assert!(PlanarCnf::new(1, alloc::vec![alloc::vec![x, x]]).is_ok());
    }
}
