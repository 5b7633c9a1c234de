use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::vec::Vec;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{component_of, components_within, neighborhood_adj, Graph};
use crate::hclass::{HClass, Membership};
use crate::planarity::is_planar_adj;

use super::{verify_planar_modulator, PlanarModulator};

/// Default vertex ceiling of the exhaustive modulator search.
pub const MODULATOR_CEILING: usize = 32;

/// Search order and pendant pieces of one connected scope.
struct Layout {
    order: Vec<usize>,
    /// `pieces[c]`: components of `scope - c` not containing the root.
    pieces: Vec<Vec<VertexSet>>,
}

/// Exhaustive branch-and-bound search for planar H-modulators.
///
/// Vertices are assigned to `X` or `Y = V - X` one at a time. A partial
/// assignment is abandoned when
/// * a component of `G[Y]` cannot be an induced subgraph of a member of
///   `H`, is closed off and not a member, or sees more than four vertices of
///   `X` (a planar torso has no `K5`);
/// * `G[X]` plus a clique on the `X`-neighbourhood of each component of
///   `G[Y]` is not planar; this graph is a subgraph of the final torso.
///
/// When a cut vertex is put into `X`, its pendant pieces no longer interact
/// with the rest: the torso becomes a 1-sum and the components stay on one
/// side. Such pieces are solved separately and memoized.
pub struct ModulatorSearch<'a> {
    adj: &'a [VertexSet],
    h: &'a dyn Membership,
    layouts: BTreeMap<VertexSet, Rc<Layout>>,
    memo: BTreeMap<(VertexSet, VertexSet, VertexSet), Option<VertexSet>>,
    /// Search nodes visited so far.
    pub nodes: u64,
}

impl<'a> ModulatorSearch<'a> {
    pub fn new(g: &'a Graph, h: &'a dyn Membership) -> Self {
        Self::over(g.adjacency(), h)
    }

    /// Search over an adjacency list; scopes are subsets of its indices.
    pub fn over(adj: &'a [VertexSet], h: &'a dyn Membership) -> Self {
        ModulatorSearch {
            adj,
            h,
            layouts: BTreeMap::new(),
            memo: BTreeMap::new(),
            nodes: 0,
        }
    }

    /// Some modulator `X` of `G[scope]` with `fx ⊆ X`, `X ∩ fy = ∅` and
    /// `|X| <= budget`.
    pub fn find(&mut self, scope: VertexSet, fx: VertexSet, fy: VertexSet, budget: usize) -> Result<Option<VertexSet>> {
        if self.h.is_all_graphs() && fx.is_empty() {
            return Ok(Some(VertexSet::new()));
        }
        let mut total = VertexSet::new();
        for comp in components_within(self.adj, scope) {
            // with a finite budget each component must use as few as it can
            let sol = if budget == usize::MAX {
                self.find_connected(comp, fx & comp, fy & comp, budget)?
            } else {
                self.minimum_connected(comp, fx & comp, fy & comp)?
            };
            let Some(sol) = sol else {
                return Ok(None);
            };
            total |= sol;
            if total.len() > budget {
                return Ok(None);
            }
        }
        Ok(Some(total))
    }

    /// Minimum modulator of `G[scope]`, least in lexicographic order of the
    /// sorted vertex list among those of minimum size.
    pub fn minimum(&mut self, scope: VertexSet) -> Result<Option<VertexSet>> {
        let mut total = VertexSet::new();
        for comp in components_within(self.adj, scope) {
            let Some(min) = self.minimum_connected(comp, VertexSet::new(), VertexSet::new())? else {
                return Ok(None);
            };
            let k = min.len();
            let (mut fx, mut fy) = (VertexSet::new(), VertexSet::new());
            for v in comp {
                if fx.len() == k {
                    break;
                }
                let mut with = fx;
                with.insert(v);
                if self.find_connected(comp, with, fy, k)?.is_some() {
                    fx = with;
                } else {
                    fy.insert(v);
                }
            }
            total |= fx;
        }
        Ok(Some(total))
    }

    /// A minimum modulator of a connected scope under forcing constraints.
    fn minimum_connected(&mut self, scope: VertexSet, fx: VertexSet, fy: VertexSet) -> Result<Option<VertexSet>> {
        let key = (scope, fx, fy);
        if let Some(r) = self.memo.get(&key) {
            return Ok(*r);
        }
        let mut best = self.find_connected(scope, fx, fy, usize::MAX)?;
        while let Some(b) = best {
            if b.len() <= fx.len() {
                break;
            }
            match self.find_connected(scope, fx, fy, b.len() - 1)? {
                Some(s) => best = Some(s),
                None => break,
            }
        }
        self.memo.insert(key, best);
        Ok(best)
    }

    fn layout(&mut self, scope: VertexSet) -> Rc<Layout> {
        if let Some(l) = self.layouts.get(&scope) {
            return l.clone();
        }
        let adj = self.adj;
        let root = scope
            .iter()
            .max_by_key(|&v| ((adj[v] & scope).len(), core::cmp::Reverse(v)))
            .unwrap();
        let mut pieces = alloc::vec![Vec::new(); adj.len()];
        for c in scope {
            if c == root {
                continue;
            }
            pieces[c] = components_within(adj, scope - VertexSet::singleton(c))
                .into_iter()
                .filter(|p| !p.contains(root))
                .collect();
        }
        // max-cardinality order; pendant pieces follow their cut vertex
        fn place(adj: &[VertexSet], pieces: &[Vec<VertexSet>], v: usize, placed: &mut VertexSet, order: &mut Vec<usize>) {
            order.push(v);
            placed.insert(v);
            for p in &pieces[v] {
                while let Some(u) = (*p - *placed)
                    .iter()
                    .max_by_key(|&u| ((adj[u] & *placed).len(), core::cmp::Reverse(u)))
                {
                    place(adj, pieces, u, placed, order);
                }
            }
        }
        let mut placed = VertexSet::new();
        let mut order = Vec::with_capacity(scope.len());
        place(adj, &pieces, root, &mut placed, &mut order);
        while let Some(u) = (scope - placed)
            .iter()
            .max_by_key(|&u| ((adj[u] & placed).len(), core::cmp::Reverse(u)))
        {
            place(adj, &pieces, u, &mut placed, &mut order);
        }
        let l = Rc::new(Layout { order, pieces });
        self.layouts.insert(scope, l.clone());
        l
    }

    fn find_connected(&mut self, scope: VertexSet, fx: VertexSet, fy: VertexSet, budget: usize) -> Result<Option<VertexSet>> {
        if fx.len() > budget || fx.intersects(&fy) {
            return Ok(None);
        }
        let layout = self.layout(scope);
        let st = State {
            xd: VertexSet::new(),
            yd: VertexSet::new(),
            active: scope,
            extra: VertexSet::new(),
        };
        self.dfs(&layout, fx, fy, budget, 0, st)
    }

    fn dfs(
        &mut self,
        layout: &Layout,
        fx: VertexSet,
        fy: VertexSet,
        budget: usize,
        mut i: usize,
        st: State,
    ) -> Result<Option<VertexSet>> {
        self.nodes += 1;
        while i < layout.order.len() && !st.active.contains(layout.order[i]) {
            i += 1;
        }
        if i == layout.order.len() {
            return Ok(Some(st.xd | st.extra));
        }
        let v = layout.order[i];
        if !fx.contains(v) {
            if let Some(next) = self.try_y(&st, v)? {
                if let Some(s) = self.dfs(layout, fx, fy, budget, i + 1, next)? {
                    return Ok(Some(s));
                }
            }
        }
        if !fy.contains(v) && st.xd.len() + st.extra.len() < budget {
            if let Some(next) = self.try_x(layout, &st, v, fx, fy, budget)? {
                if let Some(s) = self.dfs(layout, fx, fy, budget, i + 1, next)? {
                    return Ok(Some(s));
                }
            }
        }
        Ok(None)
    }

    fn try_y(&mut self, st: &State, v: usize) -> Result<Option<State>> {
        let adj = self.adj;
        let mut yd = st.yd;
        yd.insert(v);
        let c = component_of(adj, yd, v);
        if !self.h.extendable_within(adj, c)? {
            return Ok(None);
        }
        let nb = neighborhood_adj(adj, c);
        let nx = nb & st.xd;
        if nx.len() > 4 {
            return Ok(None);
        }
        let undecided = st.active - st.xd - yd;
        if !nb.intersects(&undecided) && !self.h.contains_within(adj, c)? {
            return Ok(None);
        }
        // new torso edges appear only if v brings X-neighbours or joins
        // components with different X-neighbourhoods
        let merged = (adj[v] & st.yd).iter().map(|u| component_of(adj, st.yd, u)).fold(
            Vec::<VertexSet>::new(),
            |mut acc, comp| {
                if !acc.contains(&comp) {
                    acc.push(comp);
                }
                acc
            },
        );
        let grows = nx.len() >= 2 && (adj[v].intersects(&st.xd) || merged.len() >= 2);
        if grows && !torso_bound_planar(adj, st.xd, yd) {
            return Ok(None);
        }
        Ok(Some(State { yd, ..*st }))
    }

    fn try_x(
        &mut self,
        layout: &Layout,
        st: &State,
        v: usize,
        fx: VertexSet,
        fy: VertexSet,
        budget: usize,
    ) -> Result<Option<State>> {
        let adj = self.adj;
        let mut xd = st.xd;
        xd.insert(v);
        let mut active = st.active;
        let mut extra = st.extra;
        for p in &layout.pieces[v] {
            if !p.is_subset(&active) || p.intersects(&(st.xd | st.yd)) {
                continue;
            }
            let sub_scope = *p | VertexSet::singleton(v);
            let Some(sol) = self.minimum_connected(sub_scope, (fx & *p) | VertexSet::singleton(v), fy & *p)? else {
                return Ok(None);
            };
            extra |= sol - VertexSet::singleton(v);
            active -= *p;
        }
        if xd.len() + extra.len() > budget {
            return Ok(None);
        }
        let undecided = active - xd - st.yd;
        let mut seen = VertexSet::new();
        for u in adj[v] & st.yd {
            if seen.contains(u) {
                continue;
            }
            let c = component_of(adj, st.yd, u);
            seen |= c;
            let nb = neighborhood_adj(adj, c);
            if (nb & xd).len() > 4 {
                return Ok(None);
            }
            if !nb.intersects(&undecided) && !self.h.contains_within(adj, c)? {
                return Ok(None);
            }
        }
        if !torso_bound_planar(adj, xd, st.yd) {
            return Ok(None);
        }
        Ok(Some(State { xd, active, extra, yd: st.yd }))
    }
}

#[derive(Clone, Copy)]
struct State {
    xd: VertexSet,
    yd: VertexSet,
    /// Scope minus the pendant pieces already solved separately.
    active: VertexSet,
    /// Modulator vertices chosen inside solved pieces.
    extra: VertexSet,
}

/// Planarity of `G[xd]` plus a clique on the `xd`-neighbourhood of every
/// component of `G[yd]`.
fn torso_bound_planar(adj: &[VertexSet], xd: VertexSet, yd: VertexSet) -> bool {
    if xd.len() <= 4 {
        return true;
    }
    let mut t: Vec<VertexSet> = alloc::vec![VertexSet::new(); adj.len()];
    for u in xd {
        t[u] = adj[u] & xd;
    }
    for c in components_within(adj, yd) {
        let nx = neighborhood_adj(adj, c) & xd;
        for u in nx {
            t[u] |= nx - VertexSet::singleton(u);
        }
    }
    let m: usize = xd.iter().map(|u| t[u].len()).sum::<usize>() / 2;
    if m > 3 * xd.len() - 6 {
        return false;
    }
    is_planar_adj(&t, xd)
}

fn check_ceiling(g: &Graph, ceiling: usize) -> Result<()> {
    if g.n() > ceiling {
        return Err(Error::CeilingExceeded {
            routine: "brute_force_planar_modulator",
            size: g.n(),
            ceiling,
        });
    }
    Ok(())
}

/// Minimum planar H-modulator, ties broken towards the lexicographically
/// least sorted vertex list; `None` certifies that none exists.
pub fn brute_force_planar_modulator(g: &Graph, h: &HClass, ceiling: usize) -> Result<Option<PlanarModulator>> {
    check_ceiling(g, ceiling)?;
    if h.is_all_graphs() {
        return verify_planar_modulator(g, h, VertexSet::new()).map(|c| c.modulator());
    }
    let mut search = ModulatorSearch::new(g, h);
    let all = g.vertices();
    if search.find(all, VertexSet::new(), VertexSet::new(), usize::MAX)?.is_none() {
        return Ok(None);
    }
    let x = search.minimum(all)?.expect("a modulator was found before");
    let checked = verify_planar_modulator(g, h, x)?;
    checked
        .modulator()
        .map(Some)
        .ok_or_else(|| Error::ContractBreach("search returned a set the verifier rejects".into()))
}

/// Decides whether `g` has a planar H-modulator.
pub fn planar_modulator_exists(g: &Graph, h: &HClass, ceiling: usize) -> Result<bool> {
    check_ceiling(g, ceiling)?;
    if h.is_all_graphs() {
        return Ok(true);
    }
    let mut search = ModulatorSearch::new(g, h);
    Ok(search.find(g.vertices(), VertexSet::new(), VertexSet::new(), usize::MAX)?.is_some())
}
