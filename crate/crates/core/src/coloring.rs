//! Proper edge colorings: the k-edge-chromatic subgraph type, König's
//! alternating-path coloring for bipartite graphs and the Misra–Gries fan
//! recoloring that realizes Vizing's bound.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{contract, Result};
use crate::graph::{edge_key, Graph, VertexSet};

const NONE: usize = usize::MAX;

/// An edge subset of `base` colored properly with colors `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KEdgeChromaticSubgraph {
    base: Graph,
    k: usize,
    colors: BTreeMap<(usize, usize), usize>,
}

impl Serialize for KEdgeChromaticSubgraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let edges: Vec<[usize; 3]> = self.colors.iter().map(|(&(u, v), &c)| [u, v, c]).collect();
        let mut st = s.serialize_struct("KEdgeChromaticSubgraph", 2)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("edges", &edges)?;
        st.end()
    }
}

impl KEdgeChromaticSubgraph {
    pub fn empty(base: &Graph, k: usize) -> Self {
        KEdgeChromaticSubgraph {
            base: base.clone(),
            k,
            colors: BTreeMap::new(),
        }
    }

    /// Validates that every edge is in `base`, colors lie in `1..=k` and each
    /// color class is a matching.
    pub fn new(
        base: &Graph,
        k: usize,
        colored: impl IntoIterator<Item = ((usize, usize), usize)>,
    ) -> Result<Self> {
        let mut m = KEdgeChromaticSubgraph::empty(base, k);
        for ((u, v), c) in colored {
            m.insert(u, v, c)?;
        }
        Ok(m)
    }

    /// Colors `uv` with `c`, rejecting anything that would break properness.
    pub fn insert(&mut self, u: usize, v: usize, c: usize) -> Result<()> {
        if !self.base.has_edge(u, v) {
            return contract(format!("edge {u}-{v} is not in the base graph"));
        }
        if c == 0 || c > self.k {
            return contract(format!("color {c} outside 1..={}", self.k));
        }
        let key = edge_key(u, v);
        if self.colors.contains_key(&key) {
            return contract(format!("edge {u}-{v} colored twice"));
        }
        if self.has_color_at(u, c) || self.has_color_at(v, c) {
            return contract(format!("color {c} repeated at edge {u}-{v}"));
        }
        self.colors.insert(key, c);
        Ok(())
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn color_of(&self, u: usize, v: usize) -> Option<usize> {
        self.colors.get(&edge_key(u, v)).copied()
    }

    pub fn colored_edges(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.colors.iter().map(|(&e, &c)| (e, c))
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.colors.keys().copied().collect()
    }

    /// The matching formed by color `c`.
    pub fn class(&self, c: usize) -> Vec<(usize, usize)> {
        self.colors
            .iter()
            .filter(|(_, &col)| col == c)
            .map(|(&e, _)| e)
            .collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.colors.keys().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn has_color_at(&self, v: usize, c: usize) -> bool {
        self.colors
            .iter()
            .any(|(&(a, b), &col)| col == c && (a == v || b == v))
    }

    /// Vertices touched by color class `c`.
    pub fn covered_by(&self, c: usize) -> VertexSet {
        let mut s = VertexSet::empty();
        for (a, b) in self.class(c) {
            s.insert(a);
            s.insert(b);
        }
        s
    }

    /// Re-checks every invariant from scratch.
    pub fn validate(&self) -> Result<()> {
        let mut seen = vec![0u64; self.base.n()];
        for (&(u, v), &c) in &self.colors {
            if !self.base.has_edge(u, v) {
                return contract(format!("edge {u}-{v} is not in the base graph"));
            }
            if c == 0 || c > self.k || c > 63 {
                return contract(format!("color {c} outside 1..={}", self.k));
            }
            for w in [u, v] {
                if seen[w] >> c & 1 == 1 {
                    return contract(format!("color {c} repeated at vertex {w}"));
                }
                seen[w] |= 1 << c;
            }
        }
        Ok(())
    }
}

/// Colors every edge of the bipartite graph `g` with colors `1..=k` by
/// alternating-path recoloring. Requires `Δ(g) ≤ k`.
pub fn konig_color(g: &Graph, k: usize) -> Result<KEdgeChromaticSubgraph> {
    if g.bipartition().is_none() {
        return contract("konig_color needs a bipartite graph");
    }
    if g.max_degree() > k {
        return contract(format!(
            "konig_color: maximum degree {} exceeds k = {k}",
            g.max_degree()
        ));
    }
    let n = g.n();
    // at[v][c] = neighbor joined to v by color c
    let mut at = vec![vec![NONE; k + 1]; n];
    let free = |at: &Vec<Vec<usize>>, v: usize| (1..=k).find(|&c| at[v][c] == NONE);
    for (u, v) in g.edges() {
        let a = free(&at, u).expect("degree bound leaves a free color at u");
        let b = free(&at, v).expect("degree bound leaves a free color at v");
        if at[v][a] != NONE {
            // Collect the a/b alternating path starting at v with color a,
            // then swap a and b along it. Bipartiteness keeps u off the path.
            let mut path = vec![v];
            let mut cur = v;
            let mut col = a;
            while at[cur][col] != NONE {
                cur = at[cur][col];
                path.push(cur);
                col = if col == a { b } else { a };
            }
            let mut col = a;
            for w in path.windows(2) {
                at[w[0]][col] = NONE;
                at[w[1]][col] = NONE;
                col = if col == a { b } else { a };
            }
            let mut col = b;
            for w in path.windows(2) {
                at[w[0]][col] = w[1];
                at[w[1]][col] = w[0];
                col = if col == a { b } else { a };
            }
        }
        debug_assert_eq!(at[v][a], NONE);
        at[u][a] = v;
        at[v][a] = u;
    }
    let mut colored = Vec::with_capacity(g.edge_count());
    for (u, row) in at.iter().enumerate() {
        for (c, &w) in row.iter().enumerate() {
            if w != NONE && u < w {
                colored.push(((u, w), c));
            }
        }
    }
    KEdgeChromaticSubgraph::new(g, k, colored)
}

/// Proper edge coloring of all of `g` with at most `Δ(g) + 1` colors
/// (Misra–Gries). Colors are `1..=Δ+1`.
pub fn vizing_color(g: &Graph) -> Result<BTreeMap<(usize, usize), usize>> {
    let n = g.n();
    let palette = g.max_degree() + 1;
    let mut at = vec![vec![NONE; palette + 1]; n];
    let mut color: BTreeMap<(usize, usize), usize> = BTreeMap::new();

    fn is_free(at: &[Vec<usize>], v: usize, c: usize) -> bool {
        at[v][c] == NONE
    }
    fn first_free(at: &[Vec<usize>], v: usize) -> usize {
        (1..at[v].len())
            .find(|&c| at[v][c] == NONE)
            .expect("palette of Δ+1 leaves a free color")
    }
    fn set(
        at: &mut [Vec<usize>],
        color: &mut BTreeMap<(usize, usize), usize>,
        u: usize,
        v: usize,
        c: usize,
    ) {
        at[u][c] = v;
        at[v][c] = u;
        color.insert(edge_key(u, v), c);
    }
    fn unset(
        at: &mut [Vec<usize>],
        color: &mut BTreeMap<(usize, usize), usize>,
        u: usize,
        v: usize,
    ) {
        if let Some(c) = color.remove(&edge_key(u, v)) {
            at[u][c] = NONE;
            at[v][c] = NONE;
        }
    }

    for (x, f0) in g.edges() {
        // maximal fan at x starting from f0
        let mut fan = vec![f0];
        let mut in_fan = VertexSet::singleton(f0);
        loop {
            let last = *fan.last().unwrap();
            let next = g.neighbors(x).iter().find(|&w| {
                !in_fan.contains(w)
                    && color
                        .get(&edge_key(x, w))
                        .is_some_and(|&c| is_free(&at, last, c))
            });
            match next {
                Some(w) => {
                    fan.push(w);
                    in_fan.insert(w);
                }
                None => break,
            }
        }
        let c = first_free(&at, x);
        let d = first_free(&at, *fan.last().unwrap());

        // invert the c/d path that starts at x with its d-colored edge
        if c != d {
            let mut path = vec![x];
            let mut cur = x;
            let mut col = d;
            while at[cur][col] != NONE {
                cur = at[cur][col];
                path.push(cur);
                col = if col == d { c } else { d };
            }
            let old: Vec<usize> = path
                .windows(2)
                .map(|w| color[&edge_key(w[0], w[1])])
                .collect();
            for w in path.windows(2) {
                unset(&mut at, &mut color, w[0], w[1]);
            }
            for (w, &oc) in path.windows(2).zip(&old) {
                let nc = if oc == c { d } else { c };
                set(&mut at, &mut color, w[0], w[1], nc);
            }
        }

        // first fan prefix ending at a vertex where d is free
        let mut end = None;
        for i in 0..fan.len() {
            if i > 0 {
                let ok = color
                    .get(&edge_key(x, fan[i]))
                    .is_some_and(|&col| is_free(&at, fan[i - 1], col));
                if !ok {
                    break;
                }
            }
            if is_free(&at, fan[i], d) {
                end = Some(i);
                break;
            }
        }
        let Some(end) = end else {
            return contract("fan recoloring found no rotation point");
        };

        // rotate the fan prefix and finish with d
        let shifted: Vec<usize> = (0..end).map(|i| color[&edge_key(x, fan[i + 1])]).collect();
        for &w in &fan[1..=end] {
            unset(&mut at, &mut color, x, w);
        }
        for (i, &c_new) in shifted.iter().enumerate() {
            set(&mut at, &mut color, x, fan[i], c_new);
        }
        set(&mut at, &mut color, x, fan[end], d);
    }
    Ok(color)
}

/// `g` colored with `k ≥ Δ(g) + 1` colors via [`vizing_color`].
pub fn vizing_k_coloring(g: &Graph, k: usize) -> Result<KEdgeChromaticSubgraph> {
    if g.edge_count() > 0 && g.max_degree() + 1 > k {
        return contract(format!(
            "Δ + 1 = {} colors do not fit in k = {k}",
            g.max_degree() + 1
        ));
    }
    KEdgeChromaticSubgraph::new(g, k, vizing_color(g)?)
}
