//! Minor models and a brute-force minor search for small patterns.

use alloc::vec::Vec;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{is_connected_within, Graph};

/// Default ceiling on the pattern size.
pub const MINOR_PATTERN_CEILING: usize = 8;
/// Default ceiling on the host size after degree reductions.
pub const MINOR_HOST_CEILING: usize = 18;

/// Branch sets of a minor model, indexed by pattern vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorModel {
    pub branch_sets: Vec<VertexSet>,
}

impl MinorModel {
    /// Checks disjointness, connectivity and edge realisation.
    pub fn verify(&self, host: &Graph, pattern: &Graph) -> bool {
        if self.branch_sets.len() != pattern.n() {
            return false;
        }
        let mut used = VertexSet::new();
        for s in &self.branch_sets {
            if s.is_empty() || s.intersects(&used) || !s.is_subset(&host.vertices()) {
                return false;
            }
            if !is_connected_within(host.adjacency(), *s) {
                return false;
            }
            used |= *s;
        }
        pattern.edges().into_iter().all(|(x, y)| {
            let reach = self.branch_sets[x].iter().fold(VertexSet::new(), |a, v| a | host.neighbors(v));
            reach.intersects(&self.branch_sets[y])
        })
    }
}

/// Searches for a `pattern` minor in `host` with the default ceilings.
pub fn find_minor(host: &Graph, pattern: &Graph) -> Result<Option<MinorModel>> {
    find_minor_with(host, pattern, MINOR_PATTERN_CEILING, MINOR_HOST_CEILING)
}

/// Exhaustive search over branch sets.
///
/// For patterns of minimum degree at least three the host is first reduced
/// by deleting vertices of degree at most one and contracting degree-two
/// vertices into a neighbour; both preserve the existence of a model. The
/// search then places connected branch sets pattern vertex by pattern
/// vertex, ordering the minima of interchangeable (twin) pattern vertices.
pub fn find_minor_with(
    host: &Graph,
    pattern: &Graph,
    pattern_ceiling: usize,
    host_ceiling: usize,
) -> Result<Option<MinorModel>> {
    let p = pattern.n();
    if p > pattern_ceiling {
        return Err(Error::CeilingExceeded {
            routine: "find_minor",
            size: p,
            ceiling: pattern_ceiling,
        });
    }
    if p == 0 {
        return Ok(Some(MinorModel { branch_sets: Vec::new() }));
    }

    // reduced host: `rep[v]` is the original vertex set behind v
    let n = host.n();
    let mut adj: Vec<VertexSet> = host.adjacency().to_vec();
    let mut alive = host.vertices();
    let mut rep: Vec<VertexSet> = (0..n).map(VertexSet::singleton).collect();
    let min_deg = (0..p).map(|x| pattern.degree(x)).min().unwrap();
    if min_deg >= 3 {
        loop {
            let Some(v) = alive.iter().find(|&v| (adj[v] & alive).len() <= 2) else {
                break;
            };
            let nb = adj[v] & alive;
            alive.remove(v);
            if nb.len() == 2 {
                let a = nb.first().unwrap();
                let b = nb.last().unwrap();
                let moved = rep[v];
                rep[a] |= moved;
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
    }
    let live = alive.to_vec();
    let hn = live.len();
    if hn < p {
        return Ok(None);
    }
    let hm: usize = live.iter().map(|&v| (adj[v] & alive).len()).sum::<usize>() / 2;
    if hm < pattern.m() {
        return Ok(None);
    }
    // host masks are single words
    if hn > host_ceiling.min(64) {
        return Err(Error::CeilingExceeded {
            routine: "find_minor host",
            size: hn,
            ceiling: host_ceiling.min(64),
        });
    }
    // compact host on 0..hn as u64 masks
    let hadj: Vec<u64> = live
        .iter()
        .map(|&v| (adj[v] & alive).iter().fold(0u64, |m, u| m | 1 << alive.rank(u)))
        .collect();
    let nbr = |mask: u64| {
        let mut out = 0u64;
        let mut m = mask;
        while m != 0 {
            out |= hadj[m.trailing_zeros() as usize];
            m &= m - 1;
        }
        out & !mask
    };
    // p disjoint nonempty branch sets fit in hn vertices only if each has
    // at most hn - p + 1
    let max_size = hn - p + 1;
    let mut sets: Vec<(u64, u64)> = connected_sets(&hadj, max_size).into_iter().map(|m| (m, nbr(m))).collect();
    sets.sort_by_key(|&(m, _)| (m.count_ones(), m));
    let mut by_vertex: Vec<Vec<usize>> = alloc::vec![Vec::new(); hn];
    for (i, &(m, _)) in sets.iter().enumerate() {
        let mut mm = m;
        while mm != 0 {
            by_vertex[mm.trailing_zeros() as usize].push(i);
            mm &= mm - 1;
        }
    }

    // pattern order: BFS from a maximum-degree vertex, per component
    let padj = pattern.adjacency();
    let mut order: Vec<usize> = Vec::new();
    let mut placed = VertexSet::new();
    while order.len() < p {
        let start = (0..p).filter(|&x| !placed.contains(x)).max_by_key(|&x| pattern.degree(x)).unwrap();
        let mut queue = alloc::vec![start];
        placed.insert(start);
        let mut qi = 0;
        while qi < queue.len() {
            let x = queue[qi];
            qi += 1;
            let mut nb: Vec<usize> = (padj[x] - placed).iter().collect();
            nb.sort_by_key(|&y| core::cmp::Reverse(pattern.degree(y)));
            for y in nb {
                placed.insert(y);
                queue.push(y);
            }
        }
        order.extend(queue);
    }
    let pos: Vec<usize> = {
        let mut pos = alloc::vec![0; p];
        for (i, &x) in order.iter().enumerate() {
            pos[x] = i;
        }
        pos
    };
    // earlier neighbours and earlier twins, in processing order
    let earlier_nb: Vec<Vec<usize>> = order
        .iter()
        .map(|&x| padj[x].iter().filter(|&y| pos[y] < pos[x]).map(|y| pos[y]).collect())
        .collect();
    let earlier_twin: Vec<Vec<usize>> = order
        .iter()
        .map(|&x| {
            (0..p)
                .filter(|&y| pos[y] < pos[x])
                .filter(|&y| {
                    let mut a = padj[x];
                    a.remove(y);
                    let mut b = padj[y];
                    b.remove(x);
                    a == b
                })
                .map(|y| pos[y])
                .collect()
        })
        .collect();

    struct Ctx<'a> {
        sets: &'a [(u64, u64)],
        by_vertex: &'a [Vec<usize>],
        degree: &'a [u32],
        earlier_nb: &'a [Vec<usize>],
        earlier_twin: &'a [Vec<usize>],
        hadj: &'a [u64],
        p: usize,
        full: u64,
    }
    fn comps(hadj: &[u64], free: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut rest = free;
        while rest != 0 {
            let mut comp = rest & rest.wrapping_neg();
            loop {
                let mut nb = 0u64;
                let mut m = comp;
                while m != 0 {
                    nb |= hadj[m.trailing_zeros() as usize];
                    m &= m - 1;
                }
                let next = (comp | nb) & rest;
                if next == comp {
                    break;
                }
                comp = next;
            }
            out.push(comp);
            rest &= !comp;
        }
        out
    }
    fn go(ctx: &Ctx, chosen: &mut Vec<(u64, u64)>, used: u64) -> bool {
        let i = chosen.len();
        if i == ctx.p {
            return true;
        }
        let free = ctx.full & !used;
        // every remaining pattern vertex needs a free component touching its
        // already placed neighbours
        let cs = comps(ctx.hadj, free);
        for j in i..ctx.p {
            let ok = cs.iter().any(|&c| {
                let cn = {
                    let mut nb = 0u64;
                    let mut m = c;
                    while m != 0 {
                        nb |= ctx.hadj[m.trailing_zeros() as usize];
                        m &= m - 1;
                    }
                    nb
                };
                ctx.earlier_nb[j].iter().filter(|&&k| k < i).all(|&k| cn & chosen[k].0 != 0)
            });
            if !ok {
                return false;
            }
        }
        if (free.count_ones() as usize) < ctx.p - i {
            return false;
        }
        let min_floor = ctx.earlier_twin[i]
            .iter()
            .map(|&k| chosen[k].0.trailing_zeros() as i64)
            .max()
            .unwrap_or(-1);
        let attempt = |chosen: &mut Vec<(u64, u64)>, m: u64, nb: u64| {
            if m & used != 0 || (m.trailing_zeros() as i64) <= min_floor {
                return false;
            }
            // disjoint neighbour branch sets each need their own vertex of nb
            if nb.count_ones() < ctx.degree[i] {
                return false;
            }
            if !ctx.earlier_nb[i].iter().all(|&k| nb & chosen[k].0 != 0) {
                return false;
            }
            chosen.push((m, nb));
            if go(ctx, chosen, used | m) {
                return true;
            }
            chosen.pop();
            false
        };
        match ctx.earlier_nb[i].first() {
            // candidates meet the neighbourhood of one placed neighbour; each
            // is visited from its least vertex there
            Some(&k) => {
                let reach = chosen[k].1 & free;
                let mut r = reach;
                while r != 0 {
                    let v = r.trailing_zeros();
                    r &= r - 1;
                    for &si in &ctx.by_vertex[v as usize] {
                        let (m, nb) = ctx.sets[si];
                        if (m & reach).trailing_zeros() == v && attempt(chosen, m, nb) {
                            return true;
                        }
                    }
                }
            }
            None => {
                for &(m, nb) in ctx.sets {
                    if attempt(chosen, m, nb) {
                        return true;
                    }
                }
            }
        }
        false
    }
    let degree: Vec<u32> = order.iter().map(|&x| pattern.degree(x) as u32).collect();
    let ctx = Ctx {
        sets: &sets,
        by_vertex: &by_vertex,
        degree: &degree,
        earlier_nb: &earlier_nb,
        earlier_twin: &earlier_twin,
        hadj: &hadj,
        p,
        full: if hn == 64 { u64::MAX } else { (1u64 << hn) - 1 },
    };
    let mut chosen = Vec::new();
    if !go(&ctx, &mut chosen, 0) {
        return Ok(None);
    }
    let mut branch_sets = alloc::vec![VertexSet::new(); p];
    for (i, &(m, _)) in chosen.iter().enumerate() {
        let mut s = VertexSet::new();
        let mut mm = m;
        while mm != 0 {
            let b = mm.trailing_zeros() as usize;
            s |= rep[live[b]];
            mm &= mm - 1;
        }
        branch_sets[order[i]] = s;
    }
    let model = MinorModel { branch_sets };
    debug_assert!(model.verify(host, pattern));
    Ok(Some(model))
}

/// Connected vertex sets of at most `max_size` vertices, as masks over the
/// compact host.
fn connected_sets(hadj: &[u64], max_size: usize) -> Vec<u64> {
    let nbr = |mask: u64| {
        let mut out = 0u64;
        let mut m = mask;
        while m != 0 {
            out |= hadj[m.trailing_zeros() as usize];
            m &= m - 1;
        }
        out & !mask
    };
    // grow each set from its least vertex upwards
    let mut out = Vec::new();
    let mut level: Vec<u64> = (0..hadj.len()).map(|v| 1u64 << v).collect();
    for size in 1..=max_size {
        if level.is_empty() {
            break;
        }
        out.extend_from_slice(&level);
        if size == max_size {
            break;
        }
        let mut next = Vec::new();
        for &s in &level {
            let above = u64::MAX.checked_shl(s.trailing_zeros() + 1).unwrap_or(0);
            let mut ext = nbr(s) & above;
            while ext != 0 {
                next.push(s | (ext & ext.wrapping_neg()));
                ext &= ext - 1;
            }
        }
        next.sort_unstable();
        next.dedup();
        level = next;
    }
    out
}
