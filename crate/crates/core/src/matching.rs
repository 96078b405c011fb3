//! Degree-constrained bipartite subgraphs.
//!
//! Given a split of a graph into a `D` side and an `X` side, a cap `k` and a
//! demand `dᵢ ≤ k` for every `X` vertex, [`check_generalized_lebensold`]
//! either finds a k-edge-chromatic subgraph of the cross edges in which every
//! `vᵢ` has degree at least `dᵢ`, or a set `S ⊆ X` with
//!
//! ```text
//! Σ_{v ∈ D} min{k, |N(v) ∩ S|}  <  Σ_{vᵢ ∈ S} dᵢ
//! ```
//!
//! The search runs as a flow problem: source → `xᵢ` (capacity `dᵢ`),
//! `xᵢ` → each `D` neighbor (capacity 1), `D` vertex → sink (capacity `k`).
//! Integral flow edges form a bipartite graph with maximum degree `k`, which
//! [`konig_color`] splits into `k` matchings. When the flow falls short, the
//! `X` vertices reachable from the source in the residual network form the
//! violator, and its gap equals the missing flow exactly.

use std::collections::VecDeque;

use serde::Serialize;

use crate::coloring::{konig_color, KEdgeChromaticSubgraph};
use crate::error::{contract, Result};
use crate::graph::{edge_key, BipartiteSplit, Graph, VertexSet};

/// Demands `dᵢ` on the vertices of a graph, clamped to `0..=k`. Entries for
/// vertices outside the `X` side are ignored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DemandProfile {
    k: usize,
    demands: Vec<usize>,
}

impl DemandProfile {
    pub fn new(k: usize, demands: Vec<usize>) -> Self {
        let demands = demands.into_iter().map(|d| d.min(k)).collect();
        DemandProfile { k, demands }
    }

    /// Every vertex demands `k`.
    pub fn uniform(n: usize, k: usize) -> Self {
        DemandProfile::new(k, vec![k; n])
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn demand(&self, v: usize) -> usize {
        self.demands.get(v).copied().unwrap_or(0)
    }

    pub fn demands(&self) -> &[usize] {
        &self.demands
    }

    /// `Σ_{vᵢ ∈ s} dᵢ`.
    pub fn total_on(&self, s: VertexSet) -> usize {
        s.iter().map(|v| self.demand(v)).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HallViolator {
    pub s: VertexSet,
    pub deficiency: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LebensoldOutcome {
    Feasible(KEdgeChromaticSubgraph),
    Infeasible(HallViolator),
}

impl LebensoldOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, LebensoldOutcome::Feasible(_))
    }
}

/// `Σ_{v ∈ D} min{k, |N(v) ∩ s|}`, the left side of the counting condition.
pub fn hall_capacity(split: &BipartiteSplit, k: usize, s: VertexSet) -> usize {
    split
        .d_side()
        .iter()
        .map(|v| split.base().degree_in(v, s).min(k))
        .sum()
}

/// Demand on `s` minus its capacity; positive exactly when `s` violates the
/// counting condition.
pub fn hall_gap(split: &BipartiteSplit, profile: &DemandProfile, s: VertexSet) -> i64 {
    profile.total_on(s) as i64 - hall_capacity(split, profile.k(), s) as i64
}

struct FlowNet {
    // (to, residual capacity, index of reverse edge)
    adj: Vec<Vec<(usize, usize, usize)>>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet {
            adj: vec![Vec::new(); nodes],
        }
    }

    fn add(&mut self, a: usize, b: usize, cap: usize) {
        let ra = self.adj[b].len();
        let rb = self.adj[a].len();
        self.adj[a].push((b, cap, ra));
        self.adj[b].push((a, 0, rb));
    }

    /// Shortest augmenting paths; BFS visits edges in insertion order.
    fn max_flow(&mut self, s: usize, t: usize) -> usize {
        let mut total = 0;
        loop {
            let mut prev: Vec<Option<(usize, usize)>> = vec![None; self.adj.len()];
            let mut seen = vec![false; self.adj.len()];
            seen[s] = true;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                if u == t {
                    break;
                }
                for (i, &(w, cap, _)) in self.adj[u].iter().enumerate() {
                    if cap > 0 && !seen[w] {
                        seen[w] = true;
                        prev[w] = Some((u, i));
                        q.push_back(w);
                    }
                }
            }
            if !seen[t] {
                return total;
            }
            let mut bottleneck = usize::MAX;
            let mut v = t;
            while let Some((u, i)) = prev[v] {
                bottleneck = bottleneck.min(self.adj[u][i].1);
                v = u;
            }
            let mut v = t;
            while let Some((u, i)) = prev[v] {
                let (_, _, r) = self.adj[u][i];
                self.adj[u][i].1 -= bottleneck;
                self.adj[v][r].1 += bottleneck;
                v = u;
            }
            total += bottleneck;
        }
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &(w, cap, _) in &self.adj[u] {
                if cap > 0 && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }
}

pub fn check_generalized_lebensold(
    split: &BipartiteSplit,
    profile: &DemandProfile,
) -> Result<LebensoldOutcome> {
    let base = split.base();
    let n = base.n();
    if profile.demands().len() != n {
        return contract(format!(
            "demand profile covers {} vertices, graph has {n}",
            profile.demands().len()
        ));
    }
    let k = profile.k();
    let (source, sink) = (n, n + 1);
    let mut net = FlowNet::new(n + 2);
    for x in split.x_side().iter() {
        net.add(source, x, profile.demand(x));
    }
    for x in split.x_side().iter() {
        for v in base.neighbors(x).intersection(split.d_side()).iter() {
            net.add(x, v, 1);
        }
    }
    for v in split.d_side().iter() {
        net.add(v, sink, k);
    }
    let flow = net.max_flow(source, sink);
    let total = profile.total_on(split.x_side());

    if flow < total {
        let reach = net.reachable(source);
        let s: VertexSet = split.x_side().iter().filter(|&x| reach[x]).collect();
        return Ok(LebensoldOutcome::Infeasible(HallViolator {
            s,
            deficiency: total - flow,
        }));
    }

    let mut chosen = Graph::empty(n);
    for x in split.x_side().iter() {
        for &(w, cap, _) in &net.adj[x] {
            if w < n && split.d_side().contains(w) && cap == 0 {
                chosen.add_edge(x, w)?;
            }
        }
    }
    let colored = konig_color(&chosen, k.max(1))?;
    let m = KEdgeChromaticSubgraph::new(
        base,
        k,
        colored.colored_edges().map(|((u, v), c)| (edge_key(u, v), c)),
    )?;
    Ok(LebensoldOutcome::Feasible(m))
}

/// The `dᵢ = k` special case: `k` disjoint matchings from `X` into `D`, each
/// saturating `X`.
pub fn lebensold_classic(split: &BipartiteSplit, k: usize) -> Result<LebensoldOutcome> {
    check_generalized_lebensold(split, &DemandProfile::uniform(split.base().n(), k))
}

/// Adds `k − dᵢ` fresh pendant `D` vertices to every `vᵢ ∈ X`, appended after
/// the existing vertices. Classic Lebensold on the result is equivalent to
/// the generalized check on the original split.
pub fn auxiliary_extension(
    split: &BipartiteSplit,
    profile: &DemandProfile,
) -> Result<BipartiteSplit> {
    let base = split.base();
    let k = profile.k();
    let extra: usize = split
        .x_side()
        .iter()
        .map(|x| k - profile.demand(x))
        .sum();
    let mut g = Graph::new(base.n() + extra)?;
    for (u, v) in base.edges() {
        g.add_edge(u, v)?;
    }
    let mut d_side = split.d_side();
    let mut next = base.n();
    for x in split.x_side().iter() {
        for _ in 0..k - profile.demand(x) {
            g.add_edge(x, next)?;
            d_side.insert(next);
            next += 1;
        }
    }
    BipartiteSplit::new(&g, d_side)
}

/// Maximum matching in a general graph (Edmonds' blossom algorithm).
pub fn maximum_matching(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.n();
    let mut mate = vec![NONE; n];
    // greedy warm start
    for (u, v) in g.edges() {
        if mate[u] == NONE && mate[v] == NONE {
            mate[u] = v;
            mate[v] = u;
        }
    }
    for root in 0..n {
        if mate[root] == NONE {
            if let Some(end) = blossom_augment(g, &mate, root) {
                apply_augmenting(&mut mate, &end);
            }
        }
    }
    let mut out: Vec<_> = (0..n)
        .filter(|&u| mate[u] != NONE && u < mate[u])
        .map(|u| (u, mate[u]))
        .collect();
    out.sort();
    out
}

const NONE: usize = usize::MAX;

/// Searches for an augmenting path from `root`; returns the `parent` array
/// and the free endpoint so the caller can flip the path.
fn blossom_augment(g: &Graph, mate: &[usize], root: usize) -> Option<(Vec<usize>, usize)> {
    let n = g.n();
    let mut parent = vec![NONE; n];
    let mut base: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    used[root] = true;
    let mut q = VecDeque::from([root]);

    let lca = |base: &[usize], parent: &[usize], mut a: usize, mut b: usize| -> usize {
        let mut seen = vec![false; n];
        loop {
            a = base[a];
            seen[a] = true;
            if mate[a] == NONE {
                break;
            }
            a = parent[mate[a]];
        }
        loop {
            b = base[b];
            if seen[b] {
                return b;
            }
            b = parent[mate[b]];
        }
    };

    fn mark_path(
        mate: &[usize],
        base: &[usize],
        parent: &mut [usize],
        in_blossom: &mut [bool],
        mut v: usize,
        b: usize,
        mut child: usize,
    ) {
        while base[v] != b {
            in_blossom[base[v]] = true;
            in_blossom[base[mate[v]]] = true;
            parent[v] = child;
            child = mate[v];
            v = parent[mate[v]];
        }
    }

    while let Some(v) = q.pop_front() {
        for to in g.neighbors(v).iter() {
            if base[v] == base[to] || mate[v] == to {
                continue;
            }
            if to == root || (mate[to] != NONE && parent[mate[to]] != NONE) {
                let cur = lca(&base, &parent, v, to);
                let mut in_blossom = vec![false; n];
                mark_path(mate, &base, &mut parent, &mut in_blossom, v, cur, to);
                mark_path(mate, &base, &mut parent, &mut in_blossom, to, cur, v);
                for i in 0..n {
                    if in_blossom[base[i]] {
                        base[i] = cur;
                        if !used[i] {
                            used[i] = true;
                            q.push_back(i);
                        }
                    }
                }
            } else if parent[to] == NONE {
                parent[to] = v;
                if mate[to] == NONE {
                    return Some((parent, to));
                }
                used[mate[to]] = true;
                q.push_back(mate[to]);
            }
        }
    }
    None
}

fn apply_augmenting(mate: &mut [usize], found: &(Vec<usize>, usize)) {
    let (parent, mut v) = (&found.0, found.1);
    while v != NONE {
        let pv = parent[v];
        let ppv = mate[pv];
        mate[v] = pv;
        mate[pv] = v;
        v = ppv;
    }
}
