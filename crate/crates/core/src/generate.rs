//! Instance generators: seeded random families, labeled enumeration, and
//! connected graphs up to isomorphism by edge count.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{check_cap, Result};
use crate::graph::{Graph, VertexSet};

pub const LABELED_VERTEX_CAP: usize = 8;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi `G(n, p)`.
pub fn gnp<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p.clamp(0.0, 1.0)) {
                g.add_edge(u, v).expect("in range");
            }
        }
    }
    g
}

/// Visits candidate edges in random order, keeping each with probability
/// `p` unless it would close a triangle.
pub fn random_triangle_free<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    pairs.shuffle(rng);
    let mut g = Graph::empty(n);
    for (u, v) in pairs {
        if rng.random_bool(p.clamp(0.0, 1.0)) && g.neighbors(u).is_disjoint(g.neighbors(v)) {
            g.add_edge(u, v).expect("in range");
        }
    }
    g
}

/// Random bipartite graph on parts `0..a` and `a..a + b`.
pub fn random_bipartite<R: Rng>(a: usize, b: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::empty(a + b);
    for u in 0..a {
        for v in a..a + b {
            if rng.random_bool(p.clamp(0.0, 1.0)) {
                g.add_edge(u, v).expect("in range");
            }
        }
    }
    g
}

/// Chordal graph by reverse simplicial construction: vertex `v` attaches to
/// a random clique inside the closed neighborhood of a random earlier
/// vertex, so `n − 1, …, 0` is a simplicial elimination order.
pub fn random_chordal<R: Rng>(n: usize, rng: &mut R) -> Graph {
    let mut g = Graph::empty(n);
    for v in 1..n {
        let anchor = rng.random_range(0..v);
        let mut clique = VertexSet::singleton(anchor);
        let mut candidates = g.neighbors(anchor).to_vec();
        candidates.shuffle(rng);
        for w in candidates {
            if rng.random_bool(0.5) && clique.is_subset(g.neighbors(w)) {
                clique.insert(w);
            }
        }
        for w in clique.iter() {
            g.add_edge(w, v).expect("in range");
        }
    }
    g
}

pub fn random_chordal_seeded(n: usize, seed: u64) -> Graph {
    random_chordal(n, &mut rng(seed))
}

/// All `2^(n(n−1)/2)` labeled graphs on `n ≤ 8` vertices, in bit order of
/// the lexicographic pair list.
pub fn all_labeled_graphs(n: usize) -> Result<impl Iterator<Item = Graph>> {
    check_cap("vertex count for labeled enumeration", n, LABELED_VERTEX_CAP)?;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let total = 1u64 << pairs.len();
    Ok((0..total).map(move |mask| {
        let mut g = Graph::empty(n);
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                g.add_edge(u, v).expect("in range");
            }
        }
        g
    }))
}

/// Refines an ordered partition until every vertex in a cell has the same
/// number of neighbors in every cell.
fn refine(g: &Graph, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    loop {
        let sets: Vec<VertexSet> = cells.iter().map(|c| c.iter().copied().collect()).collect();
        let mut next = Vec::with_capacity(cells.len());
        for cell in &cells {
            let mut keyed: Vec<(Vec<usize>, usize)> = cell
                .iter()
                .map(|&v| (sets.iter().map(|s| g.degree_in(v, *s)).collect(), v))
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                    start = i;
                }
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

fn code_of(g: &Graph, order: &[usize]) -> Vec<u64> {
    let mut pos = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    order
        .iter()
        .map(|&v| g.neighbors(v).iter().fold(0u64, |acc, w| acc | 1 << pos[w]))
        .collect()
}

fn search_canonical(g: &Graph, cells: Vec<Vec<usize>>, best: &mut Option<Vec<u64>>) {
    let cells = refine(g, cells);
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let code = code_of(g, &order);
        if best.as_ref().is_none_or(|b| code < *b) {
            *best = Some(code);
        }
        return;
    };
    for &v in &cells[target] {
        let mut split = cells.clone();
        let rest: Vec<usize> = split[target].iter().copied().filter(|&w| w != v).collect();
        split.splice(target..=target, [vec![v], rest]);
        search_canonical(g, split, best);
    }
}

/// Adjacency rows under a canonical labeling: two graphs get equal codes
/// iff they are isomorphic. Individualization-refinement without automorphism
/// pruning, meant for graphs of a dozen vertices or so.
pub fn canonical_code(g: &Graph) -> Vec<u64> {
    if g.n() == 0 {
        return Vec::new();
    }
    let mut best = None;
    search_canonical(g, vec![g.vertices().to_vec()], &mut best);
    best.expect("at least one leaf")
}

pub fn canonical_form(g: &Graph) -> Graph {
    let code = canonical_code(g);
    let mut h = Graph::empty(g.n());
    for (u, row) in code.iter().enumerate() {
        for v in VertexSet::from_bits(*row).iter().filter(|&v| v > u) {
            h.add_edge(u, v).expect("in range");
        }
    }
    h
}

/// Every connected graph with `1..=max_edges` edges, one per isomorphism
/// class, grouped by edge count. Built by adding an edge (between present
/// vertices or to a new pendant vertex) to each class of the previous size.
pub fn connected_graphs_by_edges(max_edges: usize) -> Vec<Vec<Graph>> {
    let mut levels: Vec<Vec<Graph>> = Vec::new();
    let mut current = vec![Graph::complete(2)];
    for m in 1..=max_edges {
        if m > 1 {
            let mut seen = BTreeSet::new();
            let mut next = Vec::new();
            for g in &current {
                let n = g.n();
                for u in 0..n {
                    for v in u + 1..n {
                        if !g.has_edge(u, v) {
                            let mut h = g.clone();
                            h.add_edge(u, v).expect("in range");
                            if seen.insert(canonical_code(&h)) {
                                next.push(canonical_form(&h));
                            }
                        }
                    }
                    let mut h = Graph::empty(n + 1);
                    for (a, b) in g.edges() {
                        h.add_edge(a, b).expect("in range");
                    }
                    h.add_edge(u, n).expect("in range");
                    if seen.insert(canonical_code(&h)) {
                        next.push(canonical_form(&h));
                    }
                }
            }
            current = next;
        }
        levels.push(current.clone());
    }
    levels
}
