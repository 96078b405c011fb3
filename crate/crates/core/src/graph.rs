//! Simple undirected graphs on at most 64 vertices, vertex sets, orientations
//! and bipartite splits.
//!
//! Adjacency is one `u64` bitset per vertex, so vertex sets are plain bit
//! masks and most queries are a handful of popcounts.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_cap, contract, Error, Result};

pub const MAX_VERTICES: usize = 64;

/// Default ceiling on the edge count accepted by [`orient_all`].
pub const ORIENT_ALL_EDGE_CAP: usize = 20;

#[inline]
fn bit(v: usize) -> u64 {
    1u64 << v
}

fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A subset of `0..n` stored as a bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<usize>", into = "Vec<usize>")]
pub struct VertexSet(u64);

impl VertexSet {
    pub const fn empty() -> Self {
        VertexSet(0)
    }

    pub fn full(n: usize) -> Self {
        VertexSet(low_mask(n))
    }

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(bit(v))
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 & bit(v) != 0
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= bit(v);
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !bit(v);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    /// Complement inside `0..n`.
    pub fn complement(self, n: usize) -> Self {
        VertexSet(!self.0 & low_mask(n))
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Compares the sorted member sequences lexicographically, so that
    /// `{0, 5} < {1}` and `{0, 2} < {0, 2, 3}`.
    pub fn lex_cmp(self, other: Self) -> Ordering {
        let mut a = self.iter();
        let mut b = other.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) if x != y => return x.cmp(&y),
                _ => {}
            }
        }
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::empty();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().collect()
    }
}

impl From<VertexSet> for Vec<usize> {
    fn from(s: VertexSet) -> Self {
        s.to_vec()
    }
}

pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

/// Normalizes an unordered pair so the smaller endpoint comes first.
pub fn edge_key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Graph {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::InvalidGraph(format!(
                "{n} vertices, at most {MAX_VERTICES} supported"
            )));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// Empty graph on `n` vertices. Panics above [`MAX_VERTICES`].
    pub fn empty(n: usize) -> Self {
        Graph::new(n).expect("vertex count within MAX_VERTICES")
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n)?;
        for &(u, v) in edges {
            if !g.add_edge(u, v)? {
                return Err(Error::InvalidGraph(format!("parallel edge {u}-{v}")));
            }
        }
        Ok(g)
    }

    /// Adds `uv`; returns `false` if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidGraph(format!(
                "edge {u}-{v} out of range for {} vertices",
                self.n
            )));
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("loop at {u}")));
        }
        let fresh = self.adj[u] & bit(v) == 0;
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
        Ok(fresh)
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if u < self.n && v < self.n {
            self.adj[u] &= !bit(v);
            self.adj[v] &= !bit(u);
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            g.adj[u] = low_mask(n) & !bit(u);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least three vertices");
        let mut g = Graph::path(n);
        g.add_edge(n - 1, 0).expect("cycle edge is valid");
        g
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Graph::empty(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v).expect("bipartite edge is valid");
            }
        }
        g
    }

    /// `K_{1,leaves}` with the center at 0.
    pub fn star(leaves: usize) -> Self {
        Graph::complete_bipartite(1, leaves)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & bit(v) != 0
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Number of neighbors of `v` inside `s`.
    pub fn degree_in(&self, v: usize, s: VertexSet) -> usize {
        (self.adj[v] & s.0).count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically. Positions in
    /// this list are the edge indices used throughout the crate.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            let higher = self.adj[u] & !low_mask(u + 1);
            out.extend(VertexSet(higher).iter().map(|v| (u, v)));
        }
        out
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let (u, v) = edge_key(u, v);
        if !self.has_edge(u, v) {
            return None;
        }
        let before: usize = (0..u)
            .map(|w| (self.adj[w] & !low_mask(w + 1)).count_ones() as usize)
            .sum();
        let within = (self.adj[u] & !low_mask(u + 1) & low_mask(v)).count_ones() as usize;
        Some(before + within)
    }

    /// `|E(G[s])|`.
    pub fn edges_within(&self, s: VertexSet) -> usize {
        s.iter().map(|v| self.degree_in(v, s)).sum::<usize>() / 2
    }

    /// Number of edges with exactly one endpoint in `a` and the other in `b`,
    /// for disjoint `a`, `b`.
    pub fn edges_between(&self, a: VertexSet, b: VertexSet) -> usize {
        a.iter().map(|v| self.degree_in(v, b)).sum()
    }

    /// `G[s]` re-indexed to `0..|s|`, with the map from new to old indices.
    pub fn induced_subgraph(&self, s: VertexSet) -> (Graph, Vec<usize>) {
        let map = s.to_vec();
        let mut pos = [usize::MAX; MAX_VERTICES];
        for (i, &v) in map.iter().enumerate() {
            pos[v] = i;
        }
        let mut h = Graph::empty(map.len());
        for (i, &v) in map.iter().enumerate() {
            for w in VertexSet(self.adj[v] & s.0).iter() {
                h.adj[i] |= bit(pos[w]);
            }
        }
        (h, map)
    }

    /// Spanning subgraph keeping all vertices but only the edges inside `s`.
    pub fn restrict(&self, s: VertexSet) -> Graph {
        let mut h = Graph::empty(self.n);
        for v in s.iter().filter(|&v| v < self.n) {
            h.adj[v] = self.adj[v] & s.0;
        }
        h
    }

    /// Spanning subgraph with the given edges, which must belong to `self`.
    pub fn spanning_subgraph(&self, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut h = Graph::empty(self.n);
        for &(u, v) in edges {
            if !self.has_edge(u, v) {
                return contract(format!("edge {u}-{v} is not in the base graph"));
            }
            h.add_edge(u, v)?;
        }
        Ok(h)
    }

    pub fn is_independent(&self, s: VertexSet) -> bool {
        s.iter().all(|v| self.adj[v] & s.0 == 0)
    }

    pub fn is_clique(&self, s: VertexSet) -> bool {
        s.iter().all(|v| s.difference(VertexSet::singleton(v)).is_subset(self.neighbors(v)))
    }

    /// All triangles `[a, b, c]` with `a < b < c`, sorted.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for a in 0..self.n {
            let up_a = self.adj[a] & !low_mask(a + 1);
            for b in VertexSet(up_a).iter() {
                let common = up_a & self.adj[b] & !low_mask(b + 1);
                out.extend(VertexSet(common).iter().map(|c| [a, b, c]));
            }
        }
        out
    }

    pub fn is_triangle_free(&self) -> bool {
        (0..self.n).all(|a| {
            VertexSet(self.adj[a] & !low_mask(a + 1))
                .iter()
                .all(|b| self.adj[a] & self.adj[b] == 0)
        })
    }

    /// A 2-coloring as `Some(side_zero)`, or `None` when an odd cycle exists.
    pub fn bipartition(&self) -> Option<VertexSet> {
        let mut color = vec![u8::MAX; self.n];
        let mut side = VertexSet::empty();
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            side.insert(s);
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for w in self.neighbors(u).iter() {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[u];
                        if color[w] == 0 {
                            side.insert(w);
                        }
                        stack.push(w);
                    } else if color[w] == color[u] {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }

    /// `I_k ∨ h`: `k` pairwise non-adjacent apex vertices at indices `0..k`,
    /// each joined to every vertex of `h`, whose vertex `v` moves to `k + v`.
    pub fn join_independent(k: usize, h: &Graph) -> Result<Graph> {
        if k == 0 {
            return contract("join_independent needs k >= 1");
        }
        let mut g = Graph::new(k + h.n)?;
        for (u, v) in h.edges() {
            g.add_edge(k + u, k + v)?;
        }
        for a in 0..k {
            for w in 0..h.n {
                g.add_edge(a, k + w)?;
            }
        }
        Ok(g)
    }

    /// Smallest-last (degeneracy) order: repeatedly remove a minimum-degree
    /// vertex, ties by smallest index. Returned in removal order.
    pub fn degeneracy_order(&self) -> Vec<usize> {
        let mut alive = self.vertices();
        let mut order = Vec::with_capacity(self.n);
        while let Some(v) = alive
            .iter()
            .min_by_key(|&v| (self.degree_in(v, alive), v))
        {
            order.push(v);
            alive.remove(v);
        }
        order
    }
}

/// An orientation of every edge of a base graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Orientation {
    base: Graph,
    out: Vec<u64>,
}

impl fmt::Debug for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Orientation(n={}, arcs={:?})", self.base.n, self.arcs())
    }
}

impl Orientation {
    /// Builds an orientation from arcs, which must cover each base edge
    /// exactly once in one direction.
    pub fn from_arcs(base: &Graph, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut out = vec![0u64; base.n];
        for &(u, v) in arcs {
            if !base.has_edge(u, v) {
                return contract(format!("arc {u}->{v} is not on a base edge"));
            }
            if out[u] & bit(v) != 0 || out[v] & bit(u) != 0 {
                return contract(format!("edge {u}-{v} oriented twice"));
            }
            out[u] |= bit(v);
        }
        if arcs.len() != base.edge_count() {
            return contract(format!(
                "{} arcs for {} edges",
                arcs.len(),
                base.edge_count()
            ));
        }
        Ok(Orientation {
            base: base.clone(),
            out,
        })
    }

    /// Orientation where edge `i` (in [`Graph::edges`] order) points from its
    /// smaller endpoint to its larger one when bit `i` of `bits` is clear.
    pub fn from_edge_bits(base: &Graph, bits: u64) -> Self {
        let mut out = vec![0u64; base.n];
        for (i, (u, v)) in base.edges().into_iter().enumerate() {
            if bits >> i & 1 == 0 {
                out[u] |= bit(v);
            } else {
                out[v] |= bit(u);
            }
        }
        Orientation {
            base: base.clone(),
            out,
        }
    }

    /// Every edge points from the vertex later in `order` to the earlier one.
    /// `order` must list every vertex exactly once.
    pub fn toward_earlier(base: &Graph, order: &[usize]) -> Result<Self> {
        let n = base.n;
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return contract("order is not a permutation of the vertices");
            }
            pos[v] = i;
        }
        if order.len() != n {
            return contract("order is not a permutation of the vertices");
        }
        let mut out = vec![0u64; n];
        for (u, v) in base.edges() {
            if pos[u] < pos[v] {
                out[v] |= bit(u);
            } else {
                out[u] |= bit(v);
            }
        }
        Ok(Orientation {
            base: base.clone(),
            out,
        })
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.base.n
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.base.n && self.out[u] & bit(v) != 0
    }

    pub fn out_neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.out[v])
    }

    pub fn in_neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.base.adj[v] & !self.out[v])
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].count_ones() as usize
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.base.degree(v) - self.out_degree(v)
    }

    /// Arcs in base edge order.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        self.base
            .edges()
            .into_iter()
            .map(|(u, v)| if self.has_arc(u, v) { (u, v) } else { (v, u) })
            .collect()
    }

    /// Reverses every arc leaving `v`, making `v` a sink.
    pub fn make_sink(&mut self, v: usize) {
        for w in VertexSet(self.out[v]).iter() {
            self.out[w] |= bit(v);
        }
        self.out[v] = 0;
    }
}

/// Lazily yields all `2^|E|` orientations of `g`, the `i`-th one given by
/// [`Orientation::from_edge_bits`] with `bits = i`.
pub fn orient_all(g: &Graph) -> Result<OrientAll> {
    orient_all_capped(g, ORIENT_ALL_EDGE_CAP)
}

pub fn orient_all_capped(g: &Graph, cap: usize) -> Result<OrientAll> {
    let m = g.edge_count();
    check_cap("edge count for orientation enumeration", m, cap.min(63))?;
    Ok(OrientAll {
        base: g.clone(),
        next: 0,
        end: 1u64 << m,
    })
}

pub struct OrientAll {
    base: Graph,
    next: u64,
    end: u64,
}

impl Iterator for OrientAll {
    type Item = Orientation;

    fn next(&mut self) -> Option<Orientation> {
        if self.next >= self.end {
            return None;
        }
        let o = Orientation::from_edge_bits(&self.base, self.next);
        self.next += 1;
        Some(o)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

/// A graph split into a `D` side and an `X` side, together with the maximal
/// bipartite subgraph `H` whose edges cross the split.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteSplit {
    base: Graph,
    d_side: VertexSet,
    x_side: VertexSet,
    cross: Graph,
}

impl BipartiteSplit {
    pub fn new(base: &Graph, d_side: VertexSet) -> Result<Self> {
        if !d_side.is_subset(base.vertices()) {
            return contract("D side has vertices outside the graph");
        }
        let x_side = d_side.complement(base.n);
        let mut cross = Graph::empty(base.n);
        for v in d_side.iter() {
            cross.adj[v] = base.adj[v] & x_side.0;
            for w in VertexSet(cross.adj[v]).iter() {
                cross.adj[w] |= bit(v);
            }
        }
        Ok(BipartiteSplit {
            base: base.clone(),
            d_side,
            x_side,
            cross,
        })
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn d_side(&self) -> VertexSet {
        self.d_side
    }

    pub fn x_side(&self) -> VertexSet {
        self.x_side
    }

    /// Spanning subgraph of the cross edges.
    pub fn cross(&self) -> &Graph {
        &self.cross
    }

    pub fn cross_edges(&self) -> Vec<(usize, usize)> {
        self.cross.edges()
    }
}
