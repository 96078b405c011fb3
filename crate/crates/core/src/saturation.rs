//! List assignments and saturating partial edge colorings: a brute-force
//! oracle, the elimination-order construction for chordal graphs, and the
//! pipeline that turns a saturating coloring of `G[X]` into a
//! k-edge-chromatic subgraph covering `X` k times.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::coloring::KEdgeChromaticSubgraph;
use crate::error::{check_cap, contract, Error, Result};
use crate::favaron::verify_theorem_main;
use crate::graph::{edge_key, Graph, Orientation, VertexSet};
use crate::io::parse_vertex;

pub const BRUTE_EDGE_CAP: usize = 12;
pub const BRUTE_PALETTE_CAP: usize = 6;

pub(crate) const CHORDAL_CLAIM: &str = "chordal graphs are l-saturable whenever |l(v)| <= d+(v)";
pub(crate) const PIPELINE_CLAIM: &str =
    "a saturating coloring of G[X] completes the cross subgraph to degree k on X";

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ListAssignment {
    lists: Vec<BTreeSet<usize>>,
}

impl ListAssignment {
    pub fn empty(n: usize) -> Self {
        ListAssignment {
            lists: vec![BTreeSet::new(); n],
        }
    }

    /// Colors must be positive.
    pub fn new(lists: Vec<BTreeSet<usize>>) -> Result<Self> {
        if lists.iter().any(|l| l.contains(&0)) {
            return contract("colors are positive integers");
        }
        Ok(ListAssignment { lists })
    }

    /// Parses lines `v: c1 c2 ...`; vertices not mentioned get empty lists.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut out = ListAssignment::empty(n);
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |msg: String| Error::EdgeList { line: i + 1, msg };
            let (v, colors) = line
                .split_once(':')
                .ok_or_else(|| bad(format!("expected `v: c1 c2 ...`, found `{line}`")))?;
            let v = parse_vertex(v.trim())
                .filter(|&v| v < n)
                .ok_or_else(|| bad(format!("bad vertex `{}`", v.trim())))?;
            for c in colors.split_whitespace() {
                let c: usize = c
                    .parse()
                    .ok()
                    .filter(|&c| c > 0)
                    .ok_or_else(|| bad(format!("bad color `{c}`")))?;
                out.lists[v].insert(c);
            }
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.lists.len()
    }

    pub fn get(&self, v: usize) -> &BTreeSet<usize> {
        &self.lists[v]
    }

    pub fn set(&mut self, v: usize, colors: BTreeSet<usize>) {
        self.lists[v] = colors;
    }

    pub fn max_color(&self) -> usize {
        self.lists.iter().filter_map(|l| l.last().copied()).max().unwrap_or(0)
    }

    pub fn palette(&self) -> BTreeSet<usize> {
        self.lists.iter().flatten().copied().collect()
    }
}

/// A proper coloring of some of the edges of `base` by positive integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialEdgeColoring {
    base: Graph,
    colors: BTreeMap<(usize, usize), usize>,
}

impl Serialize for PartialEdgeColoring {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let edges: Vec<[usize; 3]> = self.colors.iter().map(|(&(u, v), &c)| [u, v, c]).collect();
        edges.serialize(s)
    }
}

impl PartialEdgeColoring {
    pub fn empty(base: &Graph) -> Self {
        PartialEdgeColoring {
            base: base.clone(),
            colors: BTreeMap::new(),
        }
    }

    pub fn new(base: &Graph, colored: impl IntoIterator<Item = ((usize, usize), usize)>) -> Result<Self> {
        let mut p = PartialEdgeColoring::empty(base);
        for ((u, v), c) in colored {
            p.insert(u, v, c)?;
        }
        Ok(p)
    }

    pub fn insert(&mut self, u: usize, v: usize, c: usize) -> Result<()> {
        if !self.base.has_edge(u, v) {
            return contract(format!("edge {u}-{v} is not in the base graph"));
        }
        if c == 0 {
            return contract("colors are positive integers");
        }
        let e = edge_key(u, v);
        if self.colors.contains_key(&e) {
            return contract(format!("edge {u}-{v} already colored"));
        }
        if self.has_color_at(u, c) || self.has_color_at(v, c) {
            return contract(format!("color {c} already used at {u} or {v}"));
        }
        self.colors.insert(e, c);
        Ok(())
    }

    fn uncolor(&mut self, u: usize, v: usize) {
        self.colors.remove(&edge_key(u, v));
    }

    pub fn base(&self) -> &Graph {
        &self.base
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

    pub fn colors_at(&self, v: usize) -> BTreeSet<usize> {
        self.base
            .neighbors(v)
            .iter()
            .filter_map(|w| self.color_of(v, w))
            .collect()
    }

    pub fn has_color_at(&self, v: usize, c: usize) -> bool {
        self.base
            .neighbors(v)
            .iter()
            .any(|w| self.color_of(v, w) == Some(c))
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for (&(u, v), &c) in &self.colors {
            if !self.base.has_edge(u, v) || c == 0 {
                return contract(format!("bad colored edge {u}-{v} -> {c}"));
            }
            if !seen.insert((u, c)) || !seen.insert((v, c)) {
                return contract(format!("color {c} repeats at edge {u}-{v}"));
            }
        }
        Ok(())
    }
}

/// Every color of `l(v)` appears on an edge at `v`, for every vertex `v`.
pub fn is_saturating(g: &Graph, l: &ListAssignment, psi: &PartialEdgeColoring) -> Result<bool> {
    if psi.base() != g || l.n() != g.n() {
        return contract("coloring and lists must be on g");
    }
    psi.validate()?;
    Ok((0..g.n()).all(|v| {
        let at = psi.colors_at(v);
        l.get(v).is_subset(&at)
    }))
}

fn search(g: &Graph, l: &ListAssignment, psi: &mut PartialEdgeColoring) -> bool {
    let unmet = (0..g.n()).find_map(|v| {
        l.get(v)
            .iter()
            .find(|&&c| !psi.has_color_at(v, c))
            .map(|&c| (v, c))
    });
    let Some((v, c)) = unmet else {
        return true;
    };
    for w in g.neighbors(v).iter() {
        if psi.color_of(v, w).is_none() && !psi.has_color_at(w, c) {
            psi.insert(v, w, c).expect("checked proper");
            if search(g, l, psi) {
                return true;
            }
            psi.uncolor(v, w);
        }
    }
    false
}

/// Exhaustive search for an `l`-saturating coloring. Each unmet demand
/// `(v, c)` (smallest first) branches over the edges at `v` that can take
/// `c`; a saturating coloring exists iff one restricted to demanded colors
/// does, so the search is complete.
pub fn saturable_bruteforce(g: &Graph, l: &ListAssignment) -> Result<Option<PartialEdgeColoring>> {
    saturable_bruteforce_capped(g, l, BRUTE_EDGE_CAP)
}

pub fn saturable_bruteforce_capped(
    g: &Graph,
    l: &ListAssignment,
    edge_cap: usize,
) -> Result<Option<PartialEdgeColoring>> {
    if l.n() != g.n() {
        return contract("list assignment size differs from the vertex count");
    }
    check_cap("edge count for brute-force saturation", g.edge_count(), edge_cap)?;
    check_cap("palette size for brute-force saturation", l.palette().len(), BRUTE_PALETTE_CAP)?;
    let mut psi = PartialEdgeColoring::empty(g);
    Ok(search(g, l, &mut psi).then_some(psi))
}

/// A perfect elimination order: the later neighbors of every vertex form a
/// clique.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EliminationOrder {
    order: Vec<usize>,
    #[serde(skip)]
    pos: Vec<usize>,
}

impl EliminationOrder {
    pub fn new(g: &Graph, order: Vec<usize>) -> Result<Self> {
        let n = g.n();
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
        let eo = EliminationOrder { order, pos };
        for &v in &eo.order {
            if !g.is_clique(eo.later_neighbors(g, v)) {
                return contract(format!("later neighbors of {v} are not a clique"));
            }
        }
        Ok(eo)
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn position(&self, v: usize) -> usize {
        self.pos[v]
    }

    pub fn later_neighbors(&self, g: &Graph, v: usize) -> VertexSet {
        g.neighbors(v).iter().filter(|&w| self.pos[w] > self.pos[v]).collect()
    }
}

/// Maximum cardinality search, reversed, then verified. `None` iff `g` is
/// not chordal.
pub fn chordal_order(g: &Graph) -> Option<EliminationOrder> {
    let n = g.n();
    let mut numbered = VertexSet::empty();
    let mut visit = Vec::with_capacity(n);
    while visit.len() < n {
        let v = numbered
            .complement(n)
            .iter()
            .max_by(|&a, &b| g.degree_in(a, numbered).cmp(&g.degree_in(b, numbered)).then(b.cmp(&a)))
            .expect("unnumbered vertex left");
        numbered.insert(v);
        visit.push(v);
    }
    visit.reverse();
    EliminationOrder::new(g, visit).ok()
}

/// Each edge points from its later endpoint to its earlier one, so
/// `d⁺(v)` counts the earlier neighbors of `v`.
pub fn order_orientation(g: &Graph, ord: &EliminationOrder) -> Orientation {
    Orientation::toward_earlier(g, ord.order()).expect("order is a permutation")
}

/// Saturates `l` on a chordal graph along the elimination order. Lists are
/// padded with dummy colors to exactly `d⁺(v)`; the minimum remaining vertex
/// takes distinct representatives `c_i ∈ l(w_i)` for its later neighbors
/// (smallest free color, in order), those colors leave the lists, and on
/// the way back `v w_i` is colored `c_i` unless `w_i` already sees `c_i`.
/// Dummy-colored edges are dropped at the end.
pub fn saturate_chordal(
    g: &Graph,
    ord: &EliminationOrder,
    l: &ListAssignment,
) -> Result<PartialEdgeColoring> {
    if l.n() != g.n() {
        return contract("list assignment size differs from the vertex count");
    }
    let j = order_orientation(g, ord);
    let real_max = l.max_color();
    let mut lists: Vec<BTreeSet<usize>> = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        let d = j.out_degree(v);
        let mut list = l.get(v).clone();
        if list.len() > d {
            return contract(format!(
                "vertex {v} has {} colors but outdegree {d}",
                list.len()
            ));
        }
        let mut dummy = real_max + 1;
        while list.len() < d {
            list.insert(dummy);
            dummy += 1;
        }
        lists.push(list);
    }

    let mut reps: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.n()];
    for &v in ord.order() {
        let mut later = ord.later_neighbors(g, v).to_vec();
        later.sort_by_key(|&w| ord.position(w));
        let mut taken = BTreeSet::new();
        for (i, &w) in later.iter().enumerate() {
            if j.out_degree(w) < i + 1 {
                return Err(Error::Counterexample {
                    claim: CHORDAL_CLAIM,
                    detail: format!("later neighbor {w} of {v} has outdegree below {}", i + 1),
                });
            }
            let c = lists[w].iter().copied().find(|c| !taken.contains(c)).ok_or_else(|| {
                Error::Counterexample {
                    claim: CHORDAL_CLAIM,
                    detail: format!("no distinct representative for {w} below {v}"),
                }
            })?;
            taken.insert(c);
            lists[w].remove(&c);
            reps[v].push((w, c));
        }
    }
    debug_assert!(lists.iter().all(BTreeSet::is_empty));

    let mut psi = PartialEdgeColoring::empty(g);
    for &v in ord.order().iter().rev() {
        for &(w, c) in &reps[v] {
            if !psi.has_color_at(w, c) {
                psi.insert(v, w, c)?;
            }
        }
    }
    psi.colors.retain(|_, c| *c <= real_max);
    if !is_saturating(g, l, &psi)? {
        return Err(Error::Counterexample {
            claim: CHORDAL_CLAIM,
            detail: "output misses a listed color".into(),
        });
    }
    Ok(psi)
}

/// Convenience wrapper: computes an elimination order, refusing non-chordal
/// graphs.
pub fn saturate_chordal_auto(g: &Graph, l: &ListAssignment) -> Result<PartialEdgeColoring> {
    match chordal_order(g) {
        Some(ord) => saturate_chordal(g, &ord, l),
        None => contract("graph is not chordal"),
    }
}

/// Builds the k-edge-chromatic subgraph in which every vertex of
/// `X = V − d` has degree exactly `k`: the cross subgraph `M′` from the
/// optimal-set step, lists `l(v)` of colors that `M′` misses at `v`, an
/// `l`-saturating coloring `ψ` of `G[X]` from `sat_witness`, and the merge
/// `M_i = ψ_i ∪ {e ∈ M′_i : e misses every edge of ψ_i}`.
pub fn satur_pipeline<F>(
    g: &Graph,
    k: usize,
    d: VertexSet,
    j: &Orientation,
    sat_witness: F,
) -> Result<KEdgeChromaticSubgraph>
where
    F: FnOnce(&Graph, &ListAssignment) -> Result<PartialEdgeColoring>,
{
    let x = d.complement(g.n());
    let m_prime = verify_theorem_main(g, k, d, j)?;
    let fail = |detail: String| Error::Counterexample {
        claim: PIPELINE_CLAIM,
        detail,
    };

    let mut l = ListAssignment::empty(g.n());
    for v in x.iter() {
        let missed: BTreeSet<usize> = (1..=k).filter(|&c| !m_prime.has_color_at(v, c)).collect();
        if missed.len() != j.out_degree(v).min(k) {
            return Err(fail(format!(
                "vertex {v}: {} missed colors, outdegree {}",
                missed.len(),
                j.out_degree(v)
            )));
        }
        l.set(v, missed);
    }

    let inner = g.restrict(x);
    let psi = sat_witness(&inner, &l)?;
    if !is_saturating(&inner, &l, &psi)? {
        return Err(fail("witness coloring is not saturating".into()));
    }

    let mut out = KEdgeChromaticSubgraph::empty(g, k);
    for ((u, v), c) in psi.colored_edges() {
        if c > k {
            return contract(format!("witness used color {c} above k = {k}"));
        }
        out.insert(u, v, c)?;
    }
    for ((u, v), c) in m_prime.colored_edges() {
        if !out.has_color_at(u, c) && !out.has_color_at(v, c) {
            out.insert(u, v, c)?;
        }
    }
    if let Some(v) = x.iter().find(|&v| out.degree(v) != k) {
        return Err(fail(format!("vertex {v} ends with degree {}", out.degree(v))));
    }
    for (u, v) in out.edges() {
        if d.contains(u) && d.contains(v) {
            return Err(fail(format!("edge {u}-{v} lies inside D")));
        }
    }
    Ok(out)
}

/// The constructive route on chordal graphs: orient `G[V − d]` along an
/// elimination order, take the cross subgraph, and fill the missed colors
/// with [`saturate_chordal`]. `d` must be k-optimal (not re-checked).
pub fn chordal_full_degree(g: &Graph, k: usize, d: VertexSet) -> Result<KEdgeChromaticSubgraph> {
    let inner = g.restrict(d.complement(g.n()));
    let Some(ord) = chordal_order(&inner) else {
        return contract("G[V - D] is not chordal");
    };
    let j = order_orientation(&inner, &ord);
    satur_pipeline(g, k, d, &j, |h, l| saturate_chordal(h, &ord, l))
}

/// Exact search for a k-edge-chromatic subgraph of `g` in which every
/// vertex outside `d` has degree `k`: saturability with `l = {1..k}` on
/// `V − d` and nothing on `d`.
pub fn full_degree_subgraph(g: &Graph, k: usize, d: VertexSet) -> Result<Option<KEdgeChromaticSubgraph>> {
    full_degree_subgraph_capped(g, k, d, BRUTE_EDGE_CAP)
}

pub fn full_degree_subgraph_capped(
    g: &Graph,
    k: usize,
    d: VertexSet,
    edge_cap: usize,
) -> Result<Option<KEdgeChromaticSubgraph>> {
    if k == 0 {
        return contract("k must be a positive integer");
    }
    let mut l = ListAssignment::empty(g.n());
    for v in d.complement(g.n()).iter() {
        l.set(v, (1..=k).collect());
    }
    match saturable_bruteforce_capped(g, &l, edge_cap)? {
        Some(psi) => Ok(Some(KEdgeChromaticSubgraph::new(g, k, psi.colored_edges())?)),
        None => Ok(None),
    }
}
