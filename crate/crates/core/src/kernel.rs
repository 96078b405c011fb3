//! Good sequential decompositions of orientations, kernels, and the
//! kernel-method construction that turns a good decomposition into
//! saturating partial edge colorings.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::atomic::{AtomicU64, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{check_cap, contract, Error, Result};
use crate::graph::{BipartiteSplit, Graph, Orientation, VertexSet};
use crate::saturation::{is_saturating, ListAssignment, PartialEdgeColoring};

pub const DECOMP_EDGE_CAP: usize = 10;
pub const KERNEL_VERTEX_CAP: usize = 20;

pub(crate) const KERNEL_METHOD_CLAIM: &str =
    "a good decomposition of J makes G d+_J-saturable via kernel-greedy list coloring";

/// Layers of arc indices into [`Orientation::arcs`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequentialDecomposition {
    pub layers: Vec<Vec<usize>>,
}

impl SequentialDecomposition {
    /// Layer index (1-based) of every arc, or `None` if some arc is missing
    /// or repeated.
    fn arc_layers(&self, arcs: usize) -> std::result::Result<Vec<usize>, InvalidReason> {
        let mut at = vec![0; arcs];
        for (i, layer) in self.layers.iter().enumerate() {
            if layer.is_empty() {
                return Err(InvalidReason::EmptyLayer { layer: i + 1 });
            }
            for &a in layer {
                if a >= arcs {
                    return Err(InvalidReason::NotPartition {
                        detail: format!("arc index {a} out of range"),
                    });
                }
                if at[a] != 0 {
                    return Err(InvalidReason::NotPartition {
                        detail: format!("arc {a} appears in layers {} and {}", at[a], i + 1),
                    });
                }
                at[a] = i + 1;
            }
        }
        if let Some(a) = at.iter().position(|&l| l == 0) {
            return Err(InvalidReason::NotPartition {
                detail: format!("arc {a} is in no layer"),
            });
        }
        Ok(at)
    }
}

/// Fixture form: `{"n": .., "arcs": [[u, v], ..], "layers": [[i, ..], ..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateData {
    pub n: usize,
    pub arcs: Vec<(usize, usize)>,
    pub layers: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodDecompositionCertificate {
    base: Orientation,
    decomposition: SequentialDecomposition,
}

impl GoodDecompositionCertificate {
    pub fn base(&self) -> &Orientation {
        &self.base
    }

    pub fn decomposition(&self) -> &SequentialDecomposition {
        &self.decomposition
    }

    /// 1-based layer of each arc, in [`Orientation::arcs`] order.
    pub fn arc_layers(&self) -> Vec<usize> {
        self.decomposition
            .arc_layers(self.base.base().edge_count())
            .expect("validated")
    }

    pub fn to_data(&self) -> CertificateData {
        CertificateData {
            n: self.base.n(),
            arcs: self.base.arcs(),
            layers: self.decomposition.layers.clone(),
        }
    }

    /// Rebuilds and validates a certificate from fixture data. Arcs may come
    /// in any order; layer indices refer to the order given.
    pub fn from_data(data: &CertificateData) -> Result<Self> {
        let g = Graph::from_edges(data.n, &data.arcs)?;
        let base = Orientation::from_arcs(&g, &data.arcs)?;
        let canon: BTreeMap<(usize, usize), usize> =
            base.arcs().into_iter().enumerate().map(|(i, a)| (a, i)).collect();
        let layers = data
            .layers
            .iter()
            .map(|layer| {
                layer
                    .iter()
                    .map(|&i| {
                        data.arcs
                            .get(i)
                            .map(|a| canon[a])
                            .ok_or_else(|| Error::Contract(format!("arc index {i} out of range")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        match validate_good(&base, &SequentialDecomposition { layers }) {
            Validation::Valid(c) => Ok(c),
            Validation::Invalid(r) => contract(format!("invalid certificate: {r:?}")),
        }
    }
}

impl Serialize for GoodDecompositionCertificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_data().serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum InvalidReason {
    NotPartition { detail: String },
    EmptyLayer { layer: usize },
    /// Vertices of a directed odd cycle, in order.
    OddCycle { cycle: Vec<usize> },
    /// A layer component that is neither a directed path nor a directed
    /// even cycle.
    BadComponent { layer: usize, vertices: Vec<usize> },
    NotMonotone { vertex: usize, layer: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validation {
    Valid(GoodDecompositionCertificate),
    Invalid(InvalidReason),
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validation::Valid(_))
    }
}

/// Turns a closed walk of odd length into a simple odd cycle by erasing even
/// loops.
fn odd_cycle_in_walk(walk: &[usize]) -> Vec<usize> {
    let mut stack: Vec<usize> = Vec::new();
    for &x in walk {
        if let Some(p) = stack.iter().position(|&y| y == x) {
            let len = stack.len() - p;
            if len % 2 == 1 {
                return stack[p..].to_vec();
            }
            stack.truncate(p + 1);
        } else {
            stack.push(x);
        }
    }
    unreachable!("an odd closed walk contains an odd cycle")
}

/// A directed odd cycle of `j`, found through reachability in the
/// (vertex, parity) product.
pub fn odd_directed_cycle(j: &Orientation) -> Option<Vec<usize>> {
    let n = j.n();
    for s in 0..n {
        let mut parent = vec![[usize::MAX; 2]; n];
        let mut seen = vec![[false; 2]; n];
        seen[s][0] = true;
        let mut queue = VecDeque::from([(s, 0usize)]);
        while let Some((v, p)) = queue.pop_front() {
            for w in j.out_neighbors(v).iter() {
                let q = 1 - p;
                if !seen[w][q] {
                    seen[w][q] = true;
                    parent[w][q] = v;
                    queue.push_back((w, q));
                }
            }
        }
        if seen[s][1] {
            let mut walk = vec![s];
            let (mut v, mut p) = (s, 1);
            loop {
                let u = parent[v][p];
                walk.push(u);
                p = 1 - p;
                v = u;
                if v == s && p == 0 {
                    break;
                }
            }
            walk.reverse();
            return Some(odd_cycle_in_walk(&walk));
        }
    }
    None
}

/// Checks partition, the absence of directed odd cycles, the shape of each
/// layer's components, and monotone outdegrees, in that order.
pub fn validate_good(base: &Orientation, layers: &SequentialDecomposition) -> Validation {
    let arcs = base.arcs();
    if let Err(r) = layers.arc_layers(arcs.len()) {
        return Validation::Invalid(r);
    }
    if let Some(cycle) = odd_directed_cycle(base) {
        return Validation::Invalid(InvalidReason::OddCycle { cycle });
    }
    let n = base.n();
    let mut outdeg = vec![vec![0usize; layers.layers.len()]; n];
    for (li, layer) in layers.layers.iter().enumerate() {
        let mut out = vec![usize::MAX; n];
        let mut indeg = vec![0usize; n];
        for &a in layer {
            let (u, v) = arcs[a];
            outdeg[u][li] += 1;
            indeg[v] += 1;
            out[u] = v;
        }
        let layer_no = li + 1;
        for v in 0..n {
            if outdeg[v][li] > 1 || indeg[v] > 1 {
                // v and its neighbors within the layer
                let mut vertices: Vec<usize> = layer
                    .iter()
                    .filter(|&&a| arcs[a].0 == v || arcs[a].1 == v)
                    .flat_map(|&a| [arcs[a].0, arcs[a].1])
                    .collect();
                vertices.sort_unstable();
                vertices.dedup();
                return Validation::Invalid(InvalidReason::BadComponent {
                    layer: layer_no,
                    vertices,
                });
            }
        }
        // with in/out degree at most one, a component is a path or a cycle
        let mut visited = vec![false; n];
        for s in 0..n {
            if visited[s] || indeg[s] != 1 {
                continue;
            }
            let mut cyc = vec![s];
            let mut v = s;
            visited[s] = true;
            let mut closed = false;
            while out[v] != usize::MAX {
                v = out[v];
                if v == s {
                    closed = true;
                    break;
                }
                if visited[v] {
                    break;
                }
                visited[v] = true;
                cyc.push(v);
            }
            if closed && cyc.len() % 2 == 1 {
                return Validation::Invalid(InvalidReason::BadComponent {
                    layer: layer_no,
                    vertices: cyc,
                });
            }
        }
    }
    for (v, row) in outdeg.iter().enumerate() {
        if let Some(i) = row.windows(2).position(|w| w[0] < w[1]) {
            return Validation::Invalid(InvalidReason::NotMonotone {
                vertex: v,
                layer: i + 1,
            });
        }
    }
    Validation::Valid(GoodDecompositionCertificate {
        base: base.clone(),
        decomposition: layers.clone(),
    })
}

/// Layer assignment for an orientation without directed odd cycles:
/// each vertex's out-arcs take layers `1..=d⁺` bijectively (forced by
/// monotonicity), and the in-arcs of each vertex need distinct layers.
fn assign_layers(j: &Orientation) -> Option<Vec<usize>> {
    let arcs = j.arcs();
    let mut order: Vec<usize> = (0..arcs.len()).collect();
    // most constrained heads first
    order.sort_by_key(|&a| (std::cmp::Reverse(j.in_degree(arcs[a].1)), arcs[a]));
    let mut used_out = vec![0u64; j.n()];
    let mut used_in = vec![0u64; j.n()];
    let mut layer = vec![0usize; arcs.len()];

    fn go(
        i: usize,
        order: &[usize],
        arcs: &[(usize, usize)],
        j: &Orientation,
        used_out: &mut [u64],
        used_in: &mut [u64],
        layer: &mut [usize],
    ) -> bool {
        let Some(&a) = order.get(i) else {
            return true;
        };
        let (u, v) = arcs[a];
        for l in 1..=j.out_degree(u) {
            let b = 1u64 << l;
            if (used_out[u] | used_in[v]) & b == 0 {
                used_out[u] |= b;
                used_in[v] |= b;
                layer[a] = l;
                if go(i + 1, order, arcs, j, used_out, used_in, layer) {
                    return true;
                }
                used_out[u] &= !b;
                used_in[v] &= !b;
            }
        }
        false
    }

    go(0, &order, &arcs, j, &mut used_out, &mut used_in, &mut layer).then_some(layer)
}

fn certificate_for(j: &Orientation) -> Option<GoodDecompositionCertificate> {
    if odd_directed_cycle(j).is_some() {
        return None;
    }
    let at = assign_layers(j)?;
    let depth = at.iter().copied().max().unwrap_or(0);
    let mut layers = vec![Vec::new(); depth];
    for (a, &l) in at.iter().enumerate() {
        layers[l - 1].push(a);
    }
    match validate_good(j, &SequentialDecomposition { layers }) {
        Validation::Valid(c) => Some(c),
        Validation::Invalid(r) => unreachable!("constructed layering rejected: {r:?}"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub edge_cap: usize,
    pub jobs: usize,
    /// Random orientations to try when the graph is above `edge_cap`.
    pub sample: Option<Sampling>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sampling {
    pub seed: u64,
    pub orientations: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            edge_cap: DECOMP_EDGE_CAP,
            jobs: 1,
            sample: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum DecompositionSearch {
    Found { certificate: GoodDecompositionCertificate },
    /// `complete` distinguishes a finished exhaustive search from a spent
    /// sampling budget.
    Exhausted { complete: bool, tried: u64 },
}

impl DecompositionSearch {
    pub fn certificate(&self) -> Option<&GoodDecompositionCertificate> {
        match self {
            DecompositionSearch::Found { certificate } => Some(certificate),
            DecompositionSearch::Exhausted { .. } => None,
        }
    }
}

fn gray(i: u64) -> u64 {
    i ^ (i >> 1)
}

/// Looks for an orientation of `g` with a good decomposition. Up to
/// `edge_cap` edges every orientation is tried in Gray-code order, and the
/// first success in that order is returned whatever the job count. Above
/// the cap the search samples random orientations if a sampling budget is
/// given and refuses otherwise.
pub fn search_good_decomposition(g: &Graph, budget: &SearchBudget) -> Result<DecompositionSearch> {
    let m = g.edge_count();
    let cap = budget.edge_cap.min(63);
    if m > cap {
        let Some(sample) = budget.sample else {
            return Err(Error::CapExceeded {
                what: "edge count for exhaustive decomposition search",
                value: m,
                cap,
            });
        };
        check_cap("edge count for orientation bits", m, 63)?;
        let mut rng = ChaCha8Rng::seed_from_u64(sample.seed);
        for _ in 0..sample.orientations {
            let bits = rng.random::<u64>() & ((1u64 << m) - 1);
            if let Some(certificate) = certificate_for(&Orientation::from_edge_bits(g, bits)) {
                return Ok(DecompositionSearch::Found { certificate });
            }
        }
        return Ok(DecompositionSearch::Exhausted {
            complete: false,
            tried: sample.orientations,
        });
    }

    let total = 1u64 << m;
    let jobs = budget.jobs.max(1) as u64;
    let best = AtomicU64::new(u64::MAX);
    let chunk = total.div_ceil(jobs);
    std::thread::scope(|scope| {
        for t in 0..jobs {
            let best = &best;
            scope.spawn(move || {
                let start = t * chunk;
                let end = (start + chunk).min(total);
                for i in start..end {
                    if i >= best.load(Ordering::Relaxed) {
                        return;
                    }
                    if certificate_for(&Orientation::from_edge_bits(g, gray(i))).is_some() {
                        best.fetch_min(i, Ordering::Relaxed);
                        return;
                    }
                }
            });
        }
    });
    let i = best.into_inner();
    if i == u64::MAX {
        return Ok(DecompositionSearch::Exhausted {
            complete: true,
            tried: total,
        });
    }
    let certificate = certificate_for(&Orientation::from_edge_bits(g, gray(i))).expect("found before");
    Ok(DecompositionSearch::Found { certificate })
}

/// Lexicographically least kernel of `d` restricted to `within`: an
/// independent set that every other vertex of `within` has an arc into.
pub fn kernel_bruteforce(d: &Orientation, within: VertexSet) -> Result<Option<VertexSet>> {
    check_cap("vertex count for kernel enumeration", within.len(), KERNEL_VERTEX_CAP)?;
    let verts = within.to_vec();

    fn go(i: usize, verts: &[usize], d: &Orientation, within: VertexSet, cur: VertexSet) -> Option<VertexSet> {
        let Some(&v) = verts.get(i) else {
            let absorbed = within
                .difference(cur)
                .iter()
                .all(|w| !d.out_neighbors(w).is_disjoint(cur));
            return absorbed.then_some(cur);
        };
        // including first yields the lexicographically least kernel
        if d.base().neighbors(v).is_disjoint(cur) {
            let mut with = cur;
            with.insert(v);
            if let Some(k) = go(i + 1, verts, d, within, with) {
                return Some(k);
            }
        }
        go(i + 1, verts, d, within, cur)
    }

    Ok(go(0, &verts, d, within, VertexSet::empty()))
}

/// Orients the line graph of `u`: for edges sharing an endpoint with
/// `φ(e₁) < φ(e₂)`, the arc is `e₁ → e₂` when they meet on the X side and
/// `e₂ → e₁` when they meet on the other side. Line-graph vertex `i` is the
/// `i`-th edge of `u.cross_edges()`, which is also returned.
pub fn galvin_orientation(
    u: &BipartiteSplit,
    phi: &BTreeMap<(usize, usize), usize>,
) -> Result<(Orientation, Vec<(usize, usize)>)> {
    let edges = u.cross_edges();
    check_cap("edge count of the bipartite graph", edges.len(), crate::graph::MAX_VERTICES)?;
    let color = |e: (usize, usize)| {
        phi.get(&e)
            .copied()
            .ok_or_else(|| Error::Contract(format!("edge {e:?} has no color")))
    };
    let mut seen = BTreeSet::new();
    for &(a, b) in &edges {
        let c = color((a, b))?;
        if !seen.insert((a, c)) || !seen.insert((b, c)) {
            return contract(format!("color {c} repeats at edge {a}-{b}"));
        }
    }
    let mut line = Graph::empty(edges.len());
    let mut arcs = Vec::new();
    let x = u.x_side();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (ei, ej) = (edges[i], edges[j]);
            let common = [ei.0, ei.1]
                .into_iter()
                .find(|&w| w == ej.0 || w == ej.1);
            let Some(w) = common else { continue };
            line.add_edge(i, j)?;
            let (lo, hi) = if color(ei)? < color(ej)? { (i, j) } else { (j, i) };
            arcs.push(if x.contains(w) { (lo, hi) } else { (hi, lo) });
        }
    }
    Ok((Orientation::from_arcs(&line, &arcs)?, edges))
}

/// A matching of a layer digraph `J_c` (in/out degree at most one, no odd
/// cycle) covering every vertex of positive outdegree: odd-position arcs
/// along each path, and on each even cycle the alternating class holding
/// the least arc.
fn covering_matching(n: usize, arcs: &[(usize, usize)]) -> Result<Vec<(usize, usize)>> {
    let mut out = vec![usize::MAX; n];
    let mut indeg = vec![0; n];
    for &(u, v) in arcs {
        if out[u] != usize::MAX || indeg[v] > 0 {
            return Err(Error::Counterexample {
                claim: KERNEL_METHOD_CLAIM,
                detail: format!("color class has a vertex of in- or outdegree 2 at arc {u}->{v}"),
            });
        }
        out[u] = v;
        indeg[v] += 1;
    }
    let mut visited = vec![false; n];
    let mut m = Vec::new();
    for s in 0..n {
        if indeg[s] == 0 && out[s] != usize::MAX {
            let mut v = s;
            let mut take = true;
            while out[v] != usize::MAX {
                visited[v] = true;
                if take {
                    m.push((v, out[v]));
                }
                take = !take;
                v = out[v];
            }
            visited[v] = true;
        }
    }
    for s in 0..n {
        if visited[s] || out[s] == usize::MAX {
            continue;
        }
        let mut cyc = vec![(s, out[s])];
        let mut v = out[s];
        visited[s] = true;
        while v != s {
            visited[v] = true;
            cyc.push((v, out[v]));
            v = out[v];
        }
        if cyc.len() % 2 == 1 {
            return Err(Error::Counterexample {
                claim: KERNEL_METHOD_CLAIM,
                detail: format!("odd cycle {cyc:?} in a color class"),
            });
        }
        let least = (0..cyc.len()).min_by_key(|&i| cyc[i]).expect("nonempty");
        m.extend(cyc.iter().skip(least % 2).step_by(2));
    }
    Ok(m)
}

/// Builds an `l`-saturating coloring of `g` from a good decomposition of an
/// orientation `J` of `g`, for any `l` with `|l(v)| ≤ d⁺_J(v)`.
pub fn decomposition_to_saturating(
    g: &Graph,
    cert: &GoodDecompositionCertificate,
    l: &ListAssignment,
) -> Result<PartialEdgeColoring> {
    let j = cert.base();
    if j.base() != g || l.n() != g.n() {
        return contract("certificate and lists must be on g");
    }
    let n = g.n();
    check_cap("vertex count for the doubled graph", n, crate::graph::MAX_VERTICES / 2)?;
    let fail = |detail: String| Error::Counterexample {
        claim: KERNEL_METHOD_CLAIM,
        detail,
    };

    // (1) U: u_x = u, v_y = n + v
    let arcs = j.arcs();
    let u_edges: Vec<(usize, usize)> = arcs.iter().map(|&(u, v)| (u, n + v)).collect();
    let ug = Graph::from_edges(2 * n, &u_edges)?;
    let split = BipartiteSplit::new(&ug, (n..2 * n).collect())?;

    // (2) φ = layer index
    let layer_of = cert.arc_layers();
    let phi: BTreeMap<(usize, usize), usize> = u_edges.iter().copied().zip(layer_of.iter().copied()).collect();
    for u in 0..n {
        let colors: BTreeSet<usize> = u_edges
            .iter()
            .filter(|e| e.0 == u)
            .map(|e| phi[e])
            .collect();
        let expect: BTreeSet<usize> = (1..=ug.degree(u)).collect();
        if colors != expect {
            return Err(fail(format!("colors at {u}_x are {colors:?}, not 1..={}", ug.degree(u))));
        }
    }
    let (z, line_vertices) = galvin_orientation(&split, &phi)?;
    for (i, &(ux, _)) in line_vertices.iter().enumerate() {
        if z.out_degree(i) + 1 > ug.degree(ux) {
            return Err(fail(format!("line vertex {i} has outdegree {}", z.out_degree(i))));
        }
    }

    // (3) pad, (4) lift
    let real_max = l.max_color();
    let mut padded: Vec<BTreeSet<usize>> = Vec::with_capacity(n);
    for v in 0..n {
        let mut list = l.get(v).clone();
        if list.len() > j.out_degree(v) {
            return contract(format!(
                "vertex {v} has {} colors but outdegree {}",
                list.len(),
                j.out_degree(v)
            ));
        }
        let mut dummy = real_max + 1;
        while list.len() < j.out_degree(v) {
            list.insert(dummy);
            dummy += 1;
        }
        padded.push(list);
    }
    let mut lists: Vec<BTreeSet<usize>> = line_vertices.iter().map(|&(ux, _)| padded[ux].clone()).collect();

    // (5) kernel-greedy in ascending color order
    let palette: BTreeSet<usize> = lists.iter().flatten().copied().collect();
    let mut psi: Vec<usize> = vec![0; line_vertices.len()];
    for &c in &palette {
        let with_c: VertexSet = (0..line_vertices.len())
            .filter(|&i| psi[i] == 0 && lists[i].contains(&c))
            .collect();
        if with_c.is_empty() {
            continue;
        }
        let kernel = kernel_bruteforce(&z, with_c)?
            .ok_or_else(|| fail(format!("no kernel among line vertices {with_c:?} for color {c}")))?;
        for i in with_c.iter() {
            if kernel.contains(i) {
                psi[i] = c;
            } else {
                lists[i].remove(&c);
            }
        }
    }
    if let Some(i) = psi.iter().position(|&c| c == 0) {
        return Err(fail(format!("line vertex {i} left uncolored")));
    }

    // (6) covering matchings per color
    let mut xi = PartialEdgeColoring::empty(g);
    for &c in &palette {
        // line vertex (u_x, v_y) is the arc u -> v
        let jc: Vec<(usize, usize)> = line_vertices
            .iter()
            .zip(&psi)
            .filter(|&(_, &p)| p == c)
            .map(|(&(ux, vy), _)| (ux, vy - n))
            .collect();
        for (u, v) in covering_matching(n, &jc)? {
            // (7) dummy colors are dropped
            if c <= real_max {
                xi.insert(u, v, c)?;
            }
        }
    }
    if !is_saturating(g, l, &xi)? {
        return Err(fail("result misses a listed color".into()));
    }
    Ok(xi)
}
