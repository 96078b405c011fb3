//! Triangle packing and covering numbers, maximum k-edge-colorable
//! subgraphs, and the translations between `I_k ∨ H` and `H`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::coloring::{konig_color, vizing_color, KEdgeChromaticSubgraph};
use crate::error::{check_cap, contract, Error, Result};
use crate::favaron::{k_optimal_exhaustive, phi_k};
use crate::graph::{edge_key, Graph, VertexSet};
use crate::matching::maximum_matching;

pub const TRIANGLE_CAP: usize = 200;
pub const ALPHA_EDGE_CAP: usize = 24;

pub(crate) const TUZA_JOIN_CLAIM: &str = "nu(I_k v H) = alpha'_k(H) and tau(I_k v H) = k|V(H)| - phi_k(H)";
pub(crate) const EDGE_TUZA_CLAIM: &str = "a saturating k-edge-chromatic subgraph gives 2|T| >= k|V| - phi_k";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrianglePacking {
    pub triangles: Vec<[usize; 3]>,
}

impl TrianglePacking {
    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    /// Every triple is a triangle of `g` and no edge is used twice.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let mut seen = std::collections::BTreeSet::new();
        for &[a, b, c] in &self.triangles {
            for (u, v) in [(a, b), (a, c), (b, c)] {
                if !g.has_edge(u, v) {
                    return contract(format!("{a}{b}{c} is not a triangle"));
                }
                if !seen.insert(edge_key(u, v)) {
                    return contract(format!("edge {u}-{v} used by two triangles"));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangleCover {
    pub edges: Vec<(usize, usize)>,
}

impl TriangleCover {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// `g` minus the cover is triangle-free.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let mut rest = g.clone();
        for &(u, v) in &self.edges {
            if !g.has_edge(u, v) {
                return contract(format!("cover edge {u}-{v} is not in the graph"));
            }
            rest.remove_edge(u, v);
        }
        match rest.triangles().first() {
            None => Ok(()),
            Some(t) => contract(format!("triangle {t:?} survives the cover")),
        }
    }
}

/// Triangles of `g` with their edges renumbered densely.
struct TriangleSystem {
    tris: Vec<[usize; 3]>,
    edges: Vec<(usize, usize)>,
    tri_edges: Vec<[usize; 3]>,
    edge_tris: Vec<Vec<usize>>,
}

impl TriangleSystem {
    fn new(g: &Graph, cap: usize) -> Result<Self> {
        let tris = g.triangles();
        check_cap("triangle count", tris.len(), cap)?;
        let mut ids = BTreeMap::new();
        let mut edges = Vec::new();
        let mut edge_tris: Vec<Vec<usize>> = Vec::new();
        let mut tri_edges = Vec::with_capacity(tris.len());
        for (t, &[a, b, c]) in tris.iter().enumerate() {
            let mut te = [0; 3];
            for (slot, e) in [(a, b), (a, c), (b, c)].into_iter().enumerate() {
                let id = *ids.entry(e).or_insert_with(|| {
                    edges.push(e);
                    edge_tris.push(Vec::new());
                    edges.len() - 1
                });
                edge_tris[id].push(t);
                te[slot] = id;
            }
            tri_edges.push(te);
        }
        Ok(TriangleSystem {
            tris,
            edges,
            tri_edges,
            edge_tris,
        })
    }
}

struct PackSearch<'a> {
    sys: &'a TriangleSystem,
    used: Vec<bool>,
    cur: Vec<usize>,
    best: Vec<usize>,
}

impl PackSearch<'_> {
    fn free(&self, t: usize) -> bool {
        self.sys.tri_edges[t].iter().all(|&e| !self.used[e])
    }

    fn set(&mut self, t: usize, on: bool) {
        for e in self.sys.tri_edges[t] {
            self.used[e] = on;
        }
    }

    fn run(&mut self, from: usize) {
        let total = self.sys.tris.len();
        let Some(j) = (from..total).find(|&t| self.free(t)) else {
            if self.cur.len() > self.best.len() {
                self.best = self.cur.clone();
            }
            return;
        };
        let free: Vec<usize> = (j..total).filter(|&t| self.free(t)).collect();
        let mut free_edges: Vec<usize> = free.iter().flat_map(|&t| self.sys.tri_edges[t]).collect();
        free_edges.sort_unstable();
        free_edges.dedup();
        // each packed triangle takes two free edges at each of its corners
        let mut deg: BTreeMap<usize, usize> = BTreeMap::new();
        for &e in &free_edges {
            let (u, v) = self.sys.edges[e];
            *deg.entry(u).or_default() += 1;
            *deg.entry(v).or_default() += 1;
        }
        let corners: usize = deg.values().map(|d| d / 2).sum();
        let bound = free.len().min(free_edges.len() / 3).min(corners / 3);
        if self.cur.len() + bound <= self.best.len() {
            return;
        }
        self.set(j, true);
        self.cur.push(j);
        self.run(j + 1);
        self.cur.pop();
        self.set(j, false);
        self.run(j + 1);
    }
}

pub fn nu_exact(g: &Graph) -> Result<TrianglePacking> {
    nu_exact_capped(g, TRIANGLE_CAP)
}

/// Maximum edge-disjoint triangle packing by branch and bound over the
/// sorted triangle list.
pub fn nu_exact_capped(g: &Graph, cap: usize) -> Result<TrianglePacking> {
    let sys = TriangleSystem::new(g, cap)?;
    let mut s = PackSearch {
        sys: &sys,
        used: vec![false; sys.edges.len()],
        cur: Vec::new(),
        best: Vec::new(),
    };
    // greedy warm start
    for t in 0..sys.tris.len() {
        if s.free(t) {
            s.set(t, true);
            s.best.push(t);
        }
    }
    s.used.iter_mut().for_each(|u| *u = false);
    s.run(0);
    Ok(TrianglePacking {
        triangles: s.best.iter().map(|&t| sys.tris[t]).collect(),
    })
}

struct CoverSearch<'a> {
    sys: &'a TriangleSystem,
    hits: Vec<u32>,
    forbidden: Vec<bool>,
    cur: Vec<usize>,
    best: Vec<usize>,
}

impl CoverSearch<'_> {
    fn toggle(&mut self, e: usize, on: bool) {
        for &t in &self.sys.edge_tris[e] {
            if on {
                self.hits[t] += 1;
            } else {
                self.hits[t] -= 1;
            }
        }
    }

    /// Edge-disjoint unhit triangles each need their own cover edge.
    fn lower_bound(&self) -> usize {
        let mut used = vec![false; self.sys.edges.len()];
        let mut count = 0;
        for (t, te) in self.sys.tri_edges.iter().enumerate() {
            if self.hits[t] == 0 && te.iter().all(|&e| !used[e]) {
                te.iter().for_each(|&e| used[e] = true);
                count += 1;
            }
        }
        count
    }

    fn run(&mut self) {
        let Some(t) = (0..self.sys.tris.len()).find(|&t| self.hits[t] == 0) else {
            if self.cur.len() < self.best.len() {
                self.best = self.cur.clone();
            }
            return;
        };
        if self.cur.len() + self.lower_bound() >= self.best.len() {
            return;
        }
        let mut newly_forbidden = Vec::new();
        for e in self.sys.tri_edges[t] {
            if self.forbidden[e] {
                continue;
            }
            self.toggle(e, true);
            self.cur.push(e);
            self.run();
            self.cur.pop();
            self.toggle(e, false);
            // later branches may assume `e` is not in the cover
            self.forbidden[e] = true;
            newly_forbidden.push(e);
        }
        for e in newly_forbidden {
            self.forbidden[e] = false;
        }
    }
}

pub fn tau_exact(g: &Graph) -> Result<TriangleCover> {
    tau_exact_capped(g, TRIANGLE_CAP)
}

/// Minimum triangle-hitting edge set: branch on the edges of the first
/// unhit triangle, bounded below by a greedy disjoint packing.
pub fn tau_exact_capped(g: &Graph, cap: usize) -> Result<TriangleCover> {
    let sys = TriangleSystem::new(g, cap)?;
    let mut s = CoverSearch {
        sys: &sys,
        hits: vec![0; sys.tris.len()],
        forbidden: vec![false; sys.edges.len()],
        cur: Vec::new(),
        best: Vec::new(),
    };
    for t in 0..sys.tris.len() {
        if s.hits[t] == 0 {
            let e = sys.tri_edges[t][0];
            s.toggle(e, true);
            s.best.push(e);
        }
    }
    s.hits.iter_mut().for_each(|h| *h = 0);
    s.run();
    let mut edges: Vec<_> = s.best.iter().map(|&e| sys.edges[e]).collect();
    edges.sort_unstable();
    Ok(TriangleCover { edges })
}

/// Lower bound for `α′_k`: a Vizing coloring of all edges, keeping the `k`
/// largest color classes. Heuristic, not exact.
pub fn alpha_k_prime_greedy(g: &Graph, k: usize) -> Result<KEdgeChromaticSubgraph> {
    if k == 0 {
        return contract("k must be a positive integer");
    }
    let coloring = vizing_color(g)?;
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in coloring.values() {
        *sizes.entry(c).or_default() += 1;
    }
    let mut by_size: Vec<(usize, usize)> = sizes.into_iter().collect();
    by_size.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    let rename: BTreeMap<usize, usize> = by_size
        .iter()
        .take(k)
        .enumerate()
        .map(|(i, &(c, _))| (c, i + 1))
        .collect();
    KEdgeChromaticSubgraph::new(
        g,
        k,
        coloring
            .into_iter()
            .filter_map(|(e, c)| rename.get(&c).map(|&c2| (e, c2))),
    )
}

struct AlphaSearch {
    k: usize,
    full: u32,
    edges: Vec<(usize, usize)>,
    at: Vec<u32>,
    rem_deg: Vec<usize>,
    labels: Vec<usize>,
    count: usize,
    best_count: usize,
    best: Vec<usize>,
}

impl AlphaSearch {
    fn bound(&self, i: usize) -> usize {
        let colorable = self.edges[i..]
            .iter()
            .filter(|&&(u, v)| self.at[u] | self.at[v] != self.full)
            .count();
        let capacity: usize = (0..self.at.len())
            .map(|v| (self.k - self.at[v].count_ones() as usize).min(self.rem_deg[v]))
            .sum();
        colorable.min(capacity / 2)
    }

    fn run(&mut self, i: usize, max_color: usize) {
        if self.count > self.best_count {
            self.best_count = self.count;
            self.best = self.labels.clone();
        }
        if i == self.edges.len() || self.best_count == self.edges.len() {
            return;
        }
        if self.count + self.bound(i) <= self.best_count {
            return;
        }
        let (u, v) = self.edges[i];
        self.rem_deg[u] -= 1;
        self.rem_deg[v] -= 1;
        // colors above max_color + 1 are interchangeable with it
        for c in 1..=(max_color + 1).min(self.k) {
            let b = 1 << (c - 1);
            if (self.at[u] | self.at[v]) & b == 0 {
                self.at[u] |= b;
                self.at[v] |= b;
                self.labels[i] = c;
                self.count += 1;
                self.run(i + 1, max_color.max(c));
                self.count -= 1;
                self.labels[i] = 0;
                self.at[u] &= !b;
                self.at[v] &= !b;
            }
        }
        self.run(i + 1, max_color);
        self.rem_deg[u] += 1;
        self.rem_deg[v] += 1;
    }
}

pub fn alpha_k_prime(g: &Graph, k: usize) -> Result<KEdgeChromaticSubgraph> {
    alpha_k_prime_capped(g, k, ALPHA_EDGE_CAP)
}

/// A maximum k-edge-colorable subgraph. `k = 1` is a maximum matching;
/// graphs that are k-edge-colorable outright (Δ < k, or bipartite with
/// Δ ≤ k) are colored directly; everything else goes through an exact
/// backtracking search limited to `cap` edges.
pub fn alpha_k_prime_capped(g: &Graph, k: usize, cap: usize) -> Result<KEdgeChromaticSubgraph> {
    if k == 0 {
        return contract("k must be a positive integer");
    }
    if k == 1 {
        return KEdgeChromaticSubgraph::new(g, 1, maximum_matching(g).into_iter().map(|e| (e, 1)));
    }
    let delta = g.max_degree();
    if delta < k {
        return KEdgeChromaticSubgraph::new(g, k, vizing_color(g)?);
    }
    if delta == k && g.bipartition().is_some() {
        return konig_color(g, k);
    }
    check_cap("edge count for the exact k-edge-colorable search", g.edge_count(), cap)?;
    if k > 31 {
        return contract("k above 31 with Δ ≥ k is not supported");
    }
    let edges = g.edges();
    let warm = alpha_k_prime_greedy(g, k)?;
    let mut s = AlphaSearch {
        k,
        full: (1u32 << k) - 1,
        at: vec![0; g.n()],
        rem_deg: (0..g.n()).map(|v| g.degree(v)).collect(),
        labels: vec![0; edges.len()],
        count: 0,
        best_count: warm.len(),
        best: edges.iter().map(|&(u, v)| warm.color_of(u, v).unwrap_or(0)).collect(),
        edges,
    };
    s.run(0, 0);
    KEdgeChromaticSubgraph::new(
        g,
        k,
        s.edges
            .iter()
            .zip(&s.best)
            .filter(|&(_, &c)| c > 0)
            .map(|(&e, &c)| (e, c)),
    )
}

fn check_triangle_free(h: &Graph) -> Result<()> {
    if h.is_triangle_free() {
        Ok(())
    } else {
        contract("h must be triangle-free")
    }
}

/// Color class `i` of `m` becomes the triangles through apex `i − 1` of
/// `I_k ∨ h`.
pub fn packing_from_coloring(
    h: &Graph,
    k: usize,
    m: &KEdgeChromaticSubgraph,
) -> Result<TrianglePacking> {
    check_triangle_free(h)?;
    if m.base() != h || m.k() > k {
        return contract("coloring must be of h with at most k colors");
    }
    m.validate()?;
    let triangles = m
        .colored_edges()
        .map(|((u, w), c)| [c - 1, k + u, k + w])
        .collect();
    Ok(TrianglePacking { triangles })
}

/// `E(h[d])` together with every apex edge into `V(h) − d`, as a cover of
/// `I_k ∨ h` of size `k|V(h)| − φ_k(d)`.
pub fn cover_from_optimal_set(h: &Graph, k: usize, d: VertexSet) -> Result<TriangleCover> {
    check_triangle_free(h)?;
    let mut edges: Vec<_> = h
        .restrict(d)
        .edges()
        .into_iter()
        .map(|(u, w)| (k + u, k + w))
        .collect();
    for a in 0..k {
        for w in d.complement(h.n()).iter() {
            edges.push((a, k + w));
        }
    }
    edges.sort_unstable();
    let cover = TriangleCover { edges };
    let expected = (k * h.n()) as i64 - phi_k(h, k, d);
    if cover.len() as i64 != expected {
        return contract(format!("cover size {} differs from {expected}", cover.len()));
    }
    cover.validate(&Graph::join_independent(k, h)?)?;
    Ok(cover)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalizedCover {
    pub cover: TriangleCover,
    /// Vertices of `h` whose apex edges all survive.
    pub d: VertexSet,
}

/// Rewrites a cover of `I_k ∨ h` so every apex loses the same neighbors:
/// the apex removing the fewest apex edges sets the pattern for all.
pub fn normalize_cover(h: &Graph, k: usize, cover: &TriangleCover) -> Result<NormalizedCover> {
    check_triangle_free(h)?;
    let g = Graph::join_independent(k, h)?;
    cover.validate(&g)?;
    let mut internal = Vec::new();
    let mut removed = vec![VertexSet::empty(); k];
    for &(u, v) in &cover.edges {
        let (u, v) = edge_key(u, v);
        if u < k {
            removed[u].insert(v - k);
        } else {
            internal.push((u, v));
        }
    }
    let pattern = removed
        .iter()
        .copied()
        .min_by_key(|c| c.len())
        .unwrap_or_default();
    let mut edges = internal;
    for a in 0..k {
        edges.extend(pattern.iter().map(|w| (a, k + w)));
    }
    edges.sort_unstable();
    let out = TriangleCover { edges };
    if out.len() > cover.len() {
        return contract("normalization grew the cover");
    }
    out.validate(&g)?;
    let d = pattern.complement(h.n());
    if (out.len() as i64) < (k * h.n()) as i64 - phi_k(h, k, d) {
        return contract("normalized cover is smaller than k|V(h)| - phi_k(D)");
    }
    Ok(NormalizedCover { cover: out, d })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TuzaReport {
    pub k: usize,
    pub n: usize,
    pub nu: usize,
    pub tau: usize,
    pub alpha_k_prime: usize,
    pub phi_k_max: i64,
    /// `k|V(h)| − φ_k(h)`.
    pub tau_formula: i64,
    pub nu_matches: bool,
    pub tau_matches: bool,
    /// `α′_k(h) ≥ k|V(h)| − φ_k(h)`, equivalently `τ ≤ 2ν` on the join.
    pub tuza_holds: bool,
}

impl TuzaReport {
    pub fn equalities_hold(&self) -> bool {
        self.nu_matches && self.tau_matches
    }
}

/// Solves `ν` and `τ` of `I_k ∨ h` directly, compares them with `α′_k(h)`
/// and `k|V(h)| − φ_k(h)`, and cross-checks the witness translations.
pub fn verify_tuza_connection(h: &Graph, k: usize) -> Result<TuzaReport> {
    verify_tuza_connection_capped(h, k, ALPHA_EDGE_CAP)
}

pub fn verify_tuza_connection_capped(h: &Graph, k: usize, edge_cap: usize) -> Result<TuzaReport> {
    check_triangle_free(h)?;
    let g = Graph::join_independent(k, h)?;
    let packing = nu_exact(&g)?;
    let cover = tau_exact(&g)?;
    packing.validate(&g)?;
    cover.validate(&g)?;
    let (nu, tau) = (packing.len(), cover.len());
    if nu > tau || tau > 3 * nu {
        return contract(format!("solver inconsistency: nu = {nu}, tau = {tau}"));
    }

    let m = alpha_k_prime_capped(h, k, edge_cap)?;
    let lifted = packing_from_coloring(h, k, &m)?;
    lifted.validate(&g)?;
    let opt = k_optimal_exhaustive(h, k)?;
    let built = cover_from_optimal_set(h, k, opt.d)?;
    normalize_cover(h, k, &cover)?;

    let tau_formula = (k * h.n()) as i64 - opt.phi;
    debug_assert_eq!(built.len() as i64, tau_formula);
    Ok(TuzaReport {
        k,
        n: h.n(),
        nu,
        tau,
        alpha_k_prime: m.len(),
        phi_k_max: opt.phi,
        tau_formula,
        nu_matches: nu == m.len(),
        tau_matches: tau as i64 == tau_formula,
        tuza_holds: 2 * m.len() as i64 >= tau_formula,
    })
}

/// Like [`verify_tuza_connection`], but an equality failure is an error.
pub fn check_tuza_connection(h: &Graph, k: usize) -> Result<TuzaReport> {
    let r = verify_tuza_connection(h, k)?;
    if !r.equalities_hold() {
        return Err(Error::Counterexample {
            claim: TUZA_JOIN_CLAIM,
            detail: format!("{r:?}"),
        });
    }
    Ok(r)
}

/// Given a k-optimal `d` of `g` (not re-checked) and a k-edge-chromatic
/// subgraph in which every vertex outside `d` has degree `k`, merges a
/// k-coloring of `g[d]` into it class by class, keeping an inside edge only
/// when its class misses both endpoints. The result `T` satisfies
/// `2|T| ≥ k|V| − φ_k(d)`.
pub fn edgetuza_pipeline(
    g: &Graph,
    k: usize,
    d: VertexSet,
    saturating: &KEdgeChromaticSubgraph,
) -> Result<KEdgeChromaticSubgraph> {
    if k == 0 {
        return contract("k must be a positive integer");
    }
    if d.iter().any(|v| g.degree_in(v, d) >= k) {
        return contract("d must be k-dependent");
    }
    if saturating.base() != g || saturating.k() != k {
        return contract("saturating subgraph must live on g with k colors");
    }
    saturating.validate()?;
    let x = d.complement(g.n());
    if let Some(v) = x.iter().find(|&v| saturating.degree(v) != k) {
        return contract(format!("vertex {v} outside d has degree {} instead of {k}", saturating.degree(v)));
    }

    // Edges inside d play no part in saturating V − d.
    let m_prime: Vec<((usize, usize), usize)> = saturating
        .colored_edges()
        .filter(|&((u, v), _)| !(d.contains(u) && d.contains(v)))
        .collect();
    let inner = g.restrict(d);
    let n_coloring = KEdgeChromaticSubgraph::new(&inner, k, vizing_color(&inner)?)?;

    let mut t = KEdgeChromaticSubgraph::new(g, k, m_prime.iter().copied())?;
    for ((u, v), c) in n_coloring.colored_edges() {
        if !t.has_color_at(u, c) && !t.has_color_at(v, c) {
            t.insert(u, v, c)?;
        }
    }

    let q = m_prime
        .iter()
        .filter(|&&((u, v), _)| d.contains(u) != d.contains(v))
        .count();
    let inside = inner.edge_count();
    let r = inside - (t.len() - m_prime.len());
    let fail = |detail: String| {
        Err(Error::Counterexample {
            claim: EDGE_TUZA_CLAIM,
            detail,
        })
    };
    if 2 * m_prime.len() != k * x.len() + q {
        return fail(format!("degree sum: 2*{} != {k}*{} + {q}", m_prime.len(), x.len()));
    }
    if r > q {
        return fail(format!("{r} dropped inside edges but only {q} cross edges"));
    }
    let target = (k * g.n()) as i64 - phi_k(g, k, d);
    if 2 * (t.len() as i64) < target {
        return fail(format!("2|T| = {} < {target}", 2 * t.len()));
    }
    Ok(t)
}
