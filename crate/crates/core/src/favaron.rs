//! k-dependent and k-dominating sets, the potential `φ_k(D) = k|D| − |E(G[D])|`,
//! k-optimal sets, and the local-improvement step that turns a failed
//! degree-constrained matching into a set of strictly larger potential.

use serde::Serialize;

use crate::coloring::KEdgeChromaticSubgraph;
use crate::error::{check_cap, contract, Error, Result};
use crate::graph::{orient_all_capped, BipartiteSplit, Graph, Orientation, VertexSet};
use crate::matching::{
    check_generalized_lebensold, hall_capacity, DemandProfile, LebensoldOutcome,
};

/// Vertex ceiling for the subset enumerations in this module.
pub const EXHAUSTIVE_VERTEX_CAP: usize = 20;

/// Edge ceiling on `G[X]` under which [`k_optimal_local`] tries every
/// orientation instead of the fixed degeneracy-based family.
pub const LOCAL_ALL_ORIENTATIONS_EDGE_CAP: usize = 12;

pub(crate) const CROSS_SUBGRAPH_CLAIM: &str =
    "k-optimal sets admit a cross-edge k-edge-chromatic subgraph with d_M(v) + d+_J(v) >= k";
pub(crate) const IMPROVEMENT_CLAIM: &str = "a Hall violator yields a set of larger potential";
pub(crate) const HALL_MATCHING_CLAIM: &str =
    "independent sets outside a maximum independent set match into it";

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        contract("k must be a positive integer")
    } else {
        Ok(())
    }
}

pub fn phi_k(g: &Graph, k: usize, d: VertexSet) -> i64 {
    (k * d.len()) as i64 - g.edges_within(d) as i64
}

/// `Δ(G[d]) ≤ k − 1`.
pub fn is_k_dependent(g: &Graph, k: usize, d: VertexSet) -> bool {
    d.iter().all(|v| g.degree_in(v, d) < k)
}

/// Every vertex outside `d` has at least `k` neighbors in `d`.
pub fn is_k_dominating(g: &Graph, k: usize, d: VertexSet) -> bool {
    d.complement(g.n()).iter().all(|v| g.degree_in(v, d) >= k)
}

/// Shrinks `t` to a k-dependent subset without lowering `φ_k`: while some
/// vertex has induced degree at least `k`, drop the one of largest induced
/// degree (smallest index on ties). Each removal changes `φ_k` by
/// `deg − k ≥ 0`.
pub fn prune_to_dependent(g: &Graph, k: usize, t: VertexSet) -> VertexSet {
    let mut d = t;
    loop {
        let worst = d
            .iter()
            .map(|v| (g.degree_in(v, d), v))
            .filter(|&(deg, _)| deg >= k)
            .min_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        match worst {
            Some((_, v)) => d.remove(v),
            None => return d,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    Exhaustive,
    LocalMaximum,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OptimalSetResult {
    pub d: VertexSet,
    pub phi: i64,
    pub certificate: Certificate,
}

fn all_subsets(g: &Graph) -> Result<impl Iterator<Item = VertexSet>> {
    check_cap("vertex count for subset enumeration", g.n(), EXHAUSTIVE_VERTEX_CAP)?;
    Ok((0..1u64 << g.n()).map(VertexSet::from_bits))
}

/// Every k-dependent set attaining the maximum potential, in increasing
/// lexicographic order.
pub fn all_k_optimal_sets(g: &Graph, k: usize) -> Result<Vec<VertexSet>> {
    check_k(k)?;
    let mut best = i64::MIN;
    let mut sets = Vec::new();
    for d in all_subsets(g)? {
        if !is_k_dependent(g, k, d) {
            continue;
        }
        let p = phi_k(g, k, d);
        if p > best {
            best = p;
            sets.clear();
        }
        if p == best {
            sets.push(d);
        }
    }
    sets.sort_by(|a, b| a.lex_cmp(*b));
    Ok(sets)
}

/// Global maximizer of `φ_k` over k-dependent sets, lexicographically least
/// among ties.
pub fn k_optimal_exhaustive(g: &Graph, k: usize) -> Result<OptimalSetResult> {
    let sets = all_k_optimal_sets(g, k)?;
    let d = sets[0];
    Ok(OptimalSetResult {
        d,
        phi: phi_k(g, k, d),
        certificate: Certificate::Exhaustive,
    })
}

/// `max φ_k` over k-dependent sets of `g`.
pub fn phi_k_max(g: &Graph, k: usize) -> Result<i64> {
    Ok(k_optimal_exhaustive(g, k)?.phi)
}

/// Demands `max{0, k − d⁺_J(v)}` on `X = V − d`, zero on `d`.
pub fn outdegree_demands(g: &Graph, k: usize, d: VertexSet, j: &Orientation) -> DemandProfile {
    let demands = (0..g.n())
        .map(|v| {
            if d.contains(v) {
                0
            } else {
                k.saturating_sub(j.out_degree(v))
            }
        })
        .collect();
    DemandProfile::new(k, demands)
}

fn check_orientation_of_outside(g: &Graph, d: VertexSet, j: &Orientation) -> Result<()> {
    if *j.base() != g.restrict(d.complement(g.n())) {
        return contract("orientation must cover exactly the edges of G[V - D]");
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Improvement {
    Improved(VertexSet),
    NoViolation(KEdgeChromaticSubgraph),
}

/// One step of the improvement argument. With `X = V − d` and demands
/// `max{0, k − d⁺_J(v)}`, either the cross edges carry the required
/// k-edge-chromatic subgraph, or a violator `S` exists and `B ∪ S` (with
/// `B` the vertices of `d` having fewer than `k` neighbors in `S`) has
/// strictly larger potential; the pruned, k-dependent version is returned.
pub fn improve_once(g: &Graph, k: usize, d: VertexSet, j: &Orientation) -> Result<Improvement> {
    check_k(k)?;
    if !is_k_dependent(g, k, d) {
        return contract("improve_once needs a k-dependent set");
    }
    check_orientation_of_outside(g, d, j)?;
    let split = BipartiteSplit::new(g, d)?;
    let profile = outdegree_demands(g, k, d, j);
    let violator = match check_generalized_lebensold(&split, &profile)? {
        LebensoldOutcome::Feasible(m) => return Ok(Improvement::NoViolation(m)),
        LebensoldOutcome::Infeasible(h) => h,
    };

    // Vertices with outdegree above k carry no demand; dropping them keeps
    // the violation and makes every demand equal k − d⁺.
    let s: VertexSet = violator.s.iter().filter(|&v| j.out_degree(v) <= k).collect();
    let lhs = hall_capacity(&split, k, s) as i64;
    let rhs = (k * s.len()) as i64 - s.iter().map(|v| j.out_degree(v) as i64).sum::<i64>();
    if lhs >= rhs {
        return Err(Error::Counterexample {
            claim: IMPROVEMENT_CLAIM,
            detail: format!("violator {:?} does not satisfy the strict inequality", s),
        });
    }
    let b: VertexSet = d.iter().filter(|&v| g.degree_in(v, s) < k).collect();
    let candidate = b.union(s);
    let before = phi_k(g, k, d);
    if phi_k(g, k, candidate) <= before {
        return Err(Error::Counterexample {
            claim: IMPROVEMENT_CLAIM,
            detail: format!(
                "D = {:?}, S = {:?}: potential {} does not exceed {}",
                d,
                s,
                phi_k(g, k, candidate),
                before
            ),
        });
    }
    let pruned = prune_to_dependent(g, k, candidate);
    debug_assert!(phi_k(g, k, pruned) >= phi_k(g, k, candidate));
    Ok(Improvement::Improved(pruned))
}

/// Orientations of `G[X]` used by [`k_optimal_local`] when `G[X]` is too big
/// for full enumeration: the smallest-last degeneracy out-orientation, plus
/// one copy per vertex of `X` with that vertex turned into a sink.
fn fallback_orientations(outside: &Graph, x: VertexSet) -> Vec<Orientation> {
    let mut order = outside.degeneracy_order();
    order.reverse();
    let base = Orientation::toward_earlier(outside, &order).expect("order is a permutation");
    let mut out = vec![base.clone()];
    for v in x.iter() {
        let mut o = base.clone();
        o.make_sink(v);
        out.push(o);
    }
    out
}

/// Iterates [`improve_once`] from the empty set until no orientation in the
/// policy yields an improvement. The potential rises strictly each round and
/// is bounded by `k·n`, so this terminates.
pub fn k_optimal_local(g: &Graph, k: usize) -> Result<OptimalSetResult> {
    check_k(k)?;
    let mut d = VertexSet::empty();
    'outer: loop {
        let x = d.complement(g.n());
        let outside = g.restrict(x);
        let orientations: Box<dyn Iterator<Item = Orientation>> =
            if outside.edge_count() <= LOCAL_ALL_ORIENTATIONS_EDGE_CAP {
                Box::new(orient_all_capped(&outside, LOCAL_ALL_ORIENTATIONS_EDGE_CAP)?)
            } else {
                Box::new(fallback_orientations(&outside, x).into_iter())
            };
        for j in orientations {
            if let Improvement::Improved(next) = improve_once(g, k, d, &j)? {
                d = next;
                continue 'outer;
            }
        }
        break;
    }
    if !is_k_dominating(g, k, d) {
        return Err(Error::Counterexample {
            claim: CROSS_SUBGRAPH_CLAIM,
            detail: format!("local maximum {:?} is not {k}-dominating", d),
        });
    }
    Ok(OptimalSetResult {
        d,
        phi: phi_k(g, k, d),
        certificate: Certificate::LocalMaximum,
    })
}

/// For a k-optimal `d` (not re-checked) and an orientation `j` of `G[V − d]`,
/// returns a k-edge-chromatic subgraph `M` of the cross edges with
/// `d_M(v) + d⁺_J(v) ≥ k` on every outside vertex. Failure is reported as a
/// counterexample.
pub fn verify_theorem_main(
    g: &Graph,
    k: usize,
    d: VertexSet,
    j: &Orientation,
) -> Result<KEdgeChromaticSubgraph> {
    check_k(k)?;
    check_orientation_of_outside(g, d, j)?;
    let split = BipartiteSplit::new(g, d)?;
    let profile = outdegree_demands(g, k, d, j);
    let m = match check_generalized_lebensold(&split, &profile)? {
        LebensoldOutcome::Feasible(m) => m,
        LebensoldOutcome::Infeasible(h) => {
            return Err(Error::Counterexample {
                claim: CROSS_SUBGRAPH_CLAIM,
                detail: format!(
                    "D = {:?}, arcs = {:?}, violator S = {:?} (deficiency {})",
                    d,
                    j.arcs(),
                    h.s,
                    h.deficiency
                ),
            })
        }
    };
    check_cross_subgraph(g, k, d, j, &m)?;
    Ok(m)
}

/// Independent validation of a cross-edge witness.
pub fn check_cross_subgraph(
    g: &Graph,
    k: usize,
    d: VertexSet,
    j: &Orientation,
    m: &KEdgeChromaticSubgraph,
) -> Result<()> {
    m.validate()?;
    if m.k() != k {
        return contract("witness uses a different color bound");
    }
    for (u, v) in m.edges() {
        if !g.has_edge(u, v) || d.contains(u) == d.contains(v) {
            return contract(format!("edge {u}-{v} is not a cross edge"));
        }
    }
    for v in d.complement(g.n()).iter() {
        if m.degree(v) + j.out_degree(v) < k {
            return contract(format!(
                "vertex {v}: d_M = {} and d+ = {} fall short of {k}",
                m.degree(v),
                j.out_degree(v)
            ));
        }
    }
    Ok(())
}

/// `k` disjoint matchings from the independent set `s` into the k-optimal
/// set `d`, each saturating `s`. Obtained from [`verify_theorem_main`] with
/// an orientation that makes every vertex of `s` a sink.
pub fn matchings_into_d(
    g: &Graph,
    k: usize,
    d: VertexSet,
    s: VertexSet,
) -> Result<Vec<Vec<(usize, usize)>>> {
    check_k(k)?;
    if !g.is_independent(s) || !s.is_disjoint(d) {
        return contract("s must be independent and disjoint from d");
    }
    let outside = g.restrict(d.complement(g.n()));
    let arcs: Vec<_> = outside
        .edges()
        .into_iter()
        .map(|(u, v)| if s.contains(u) { (v, u) } else { (u, v) })
        .collect();
    let j = Orientation::from_arcs(&outside, &arcs)?;
    let m = verify_theorem_main(g, k, d, &j)?;
    let mut out = Vec::with_capacity(k);
    for c in 1..=k {
        let class: Vec<_> = m
            .class(c)
            .into_iter()
            .filter(|&(a, b)| s.contains(a) || s.contains(b))
            .collect();
        let covered: VertexSet = class.iter().flat_map(|&(a, b)| [a, b]).collect();
        if !s.is_subset(covered) {
            return Err(Error::Counterexample {
                claim: CROSS_SUBGRAPH_CLAIM,
                detail: format!("color {c} misses part of {:?}", s),
            });
        }
        out.push(class);
    }
    Ok(out)
}

/// A matching saturating `V − d` for a maximum independent set `d` (not
/// re-checked): a greedy maximal matching inside `V − d`, then a matching of
/// the leftover independent vertices into `d`.
pub fn saturating_matching_complement(g: &Graph, d: VertexSet) -> Result<Vec<(usize, usize)>> {
    if !g.is_independent(d) {
        return contract("d must be an independent set");
    }
    let x = d.complement(g.n());
    let mut covered = VertexSet::empty();
    let mut m = Vec::new();
    for (u, v) in g.restrict(x).edges() {
        if !covered.contains(u) && !covered.contains(v) {
            covered.insert(u);
            covered.insert(v);
            m.push((u, v));
        }
    }
    let rest = x.difference(covered);
    let split = BipartiteSplit::new(g, d)?;
    let demands = (0..g.n()).map(|v| rest.contains(v) as usize).collect();
    match check_generalized_lebensold(&split, &DemandProfile::new(1, demands))? {
        LebensoldOutcome::Feasible(m2) => m.extend(m2.edges()),
        LebensoldOutcome::Infeasible(h) => {
            return Err(Error::Counterexample {
                claim: HALL_MATCHING_CLAIM,
                detail: format!("D = {:?}, violator {:?}", d, h.s),
            })
        }
    }
    m.sort();
    Ok(m)
}

/// Smallest k-dominating set size.
pub fn gamma_k(g: &Graph, k: usize) -> Result<usize> {
    check_k(k)?;
    Ok(all_subsets(g)?
        .filter(|&d| is_k_dominating(g, k, d))
        .map(|d| d.len())
        .min()
        .expect("the full vertex set dominates"))
}

/// Largest k-dependent set size.
pub fn alpha_k(g: &Graph, k: usize) -> Result<usize> {
    check_k(k)?;
    Ok(all_subsets(g)?
        .filter(|&d| is_k_dependent(g, k, d))
        .map(|d| d.len())
        .max()
        .expect("the empty set is k-dependent"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::orient_all;
    use proptest::prelude::*;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn phi_formula() {
        assert_eq!(phi_k(&Graph::cycle(5), 3, VertexSet::empty()), 0);
        assert_eq!(phi_k(&Graph::complete(3), 2, set(&[0, 1, 2])), 3);
        assert_eq!(phi_k(&Graph::path(3), 2, set(&[0, 2])), 4);
    }

    #[test]
    fn dependence_and_domination() {
        assert!(is_k_dependent(&Graph::path(3), 2, VertexSet::empty()));
        assert!(!is_k_dependent(&Graph::path(3), 2, set(&[0, 1, 2])));
        // {0, 1, 3} in C5 induces exactly the edge 0-1
        assert!(is_k_dependent(&Graph::cycle(5), 2, set(&[0, 1, 3])));

        let k3 = Graph::complete(3);
        assert!(is_k_dominating(&k3, 2, k3.vertices()));
        assert!(!is_k_dominating(&k3, 2, set(&[0])));
        assert!(is_k_dominating(&Graph::cycle(4), 2, set(&[0, 2])));
    }

    #[test]
    fn pruning_traces() {
        let c5 = Graph::cycle(5);
        assert_eq!(prune_to_dependent(&c5, 2, set(&[0, 1, 3])), set(&[0, 1, 3]));

        let k3 = Graph::complete(3);
        let d = prune_to_dependent(&k3, 2, k3.vertices());
        assert_eq!(d, set(&[1, 2]));
        assert_eq!(phi_k(&k3, 2, d), 3);

        let p3 = Graph::path(3);
        let d = prune_to_dependent(&p3, 1, p3.vertices());
        assert_eq!(d, set(&[0, 2]));
        assert_eq!(phi_k(&p3, 1, d), 2);
    }

    #[test]
    fn exhaustive_optima() {
        let r = k_optimal_exhaustive(&Graph::path(3), 1).unwrap();
        assert_eq!((r.d, r.phi), (set(&[0, 2]), 2));

        let r = k_optimal_exhaustive(&Graph::cycle(5), 2).unwrap();
        assert_eq!(r.phi, 5);
        assert_eq!(r.d.len(), 3);
        assert_eq!(Graph::cycle(5).edges_within(r.d), 1);

        let r = k_optimal_exhaustive(&Graph::empty(4), 3).unwrap();
        assert_eq!((r.d, r.phi), (set(&[0, 1, 2, 3]), 12));

        assert!(matches!(
            k_optimal_exhaustive(&Graph::empty(21), 1),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn improve_on_triangle_gives_witness() {
        let k3 = Graph::complete(3);
        let d = set(&[0]);
        let outside = k3.restrict(set(&[1, 2]));
        for j in orient_all(&outside).unwrap() {
            match improve_once(&k3, 1, d, &j).unwrap() {
                Improvement::NoViolation(m) => {
                    assert_eq!(m.len(), 1);
                    let sink = (1..3).find(|&v| j.out_degree(v) == 0).unwrap();
                    assert_eq!(m.color_of(0, sink), Some(1));
                }
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn improve_on_path_center() {
        let p3 = Graph::path(3);
        let d = set(&[1]);
        let j = Orientation::from_arcs(&p3.restrict(set(&[0, 2])), &[]).unwrap();
        match improve_once(&p3, 1, d, &j).unwrap() {
            Improvement::Improved(next) => {
                assert!(next.is_subset(set(&[0, 2])));
                assert_eq!(phi_k(&p3, 1, next), 2);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn improve_with_full_set_is_empty_witness() {
        let g = Graph::cycle(4);
        let j = Orientation::from_arcs(&Graph::empty(4), &[]).unwrap();
        match improve_once(&g, 3, g.vertices(), &j).unwrap() {
            Improvement::NoViolation(m) => assert!(m.is_empty()),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn improve_rejects_bad_preconditions() {
        let p3 = Graph::path(3);
        let j = Orientation::from_arcs(&Graph::empty(3), &[]).unwrap();
        assert!(matches!(
            improve_once(&p3, 1, p3.vertices(), &j),
            Err(Error::Contract(_))
        ));
        // wrong orientation base
        let j = Orientation::from_arcs(&p3, &[(0, 1), (1, 2)]).unwrap();
        assert!(matches!(improve_once(&p3, 1, set(&[0]), &j), Err(Error::Contract(_))));
    }

    #[test]
    fn local_search_matches_small_optima() {
        assert_eq!(k_optimal_local(&Graph::path(3), 1).unwrap().phi, 2);
        for n in 1..7 {
            assert_eq!(k_optimal_local(&Graph::complete(n), 1).unwrap().phi, 1);
        }
        let r = k_optimal_local(&Graph::cycle(4), 2).unwrap();
        assert_eq!(r.phi, 4);
        assert_eq!(r.certificate, Certificate::LocalMaximum);
    }

    #[test]
    fn cross_subgraph_examples() {
        let g = Graph::cycle(5);
        let d = VertexSet::full(5);
        let j = Orientation::from_arcs(&Graph::empty(5), &[]).unwrap();
        assert!(verify_theorem_main(&g, 2, d, &j).unwrap().is_empty());

        let k3 = Graph::complete(3);
        let j = Orientation::from_arcs(&k3.restrict(set(&[1, 2])), &[(1, 2)]).unwrap();
        let m = verify_theorem_main(&k3, 1, set(&[0]), &j).unwrap();
        assert_eq!(m.edges(), vec![(0, 2)]);

        let c4 = Graph::cycle(4);
        let j = Orientation::from_arcs(&Graph::empty(4), &[]).unwrap();
        let m = verify_theorem_main(&c4, 2, set(&[0, 2]), &j).unwrap();
        assert_eq!(m.len(), 4);
    }

    #[test]
    fn matchings_into_optimal_set() {
        let c4 = Graph::cycle(4);
        let ms = matchings_into_d(&c4, 2, set(&[0, 2]), set(&[1])).unwrap();
        assert_eq!(ms.len(), 2);
        let mut all: Vec<_> = ms.concat();
        all.sort();
        assert_eq!(all, vec![(0, 1), (1, 2)]);
        assert!(ms.iter().all(|m| m.len() == 1));

        let ms = matchings_into_d(&c4, 2, set(&[0, 2]), VertexSet::empty()).unwrap();
        assert!(ms.iter().all(Vec::is_empty));
    }

    #[test]
    fn k1_saturating_matchings() {
        let k2 = Graph::complete(2);
        assert_eq!(saturating_matching_complement(&k2, set(&[0])).unwrap(), vec![(0, 1)]);

        let c5 = Graph::cycle(5);
        let m = saturating_matching_complement(&c5, set(&[0, 2])).unwrap();
        assert_eq!(m.len(), 2);
        let covered: VertexSet = m.iter().flat_map(|&(a, b)| [a, b]).collect();
        assert!(set(&[1, 3, 4]).is_subset(covered));
        assert!(m.contains(&(3, 4)));

        let star = Graph::star(3);
        let m = saturating_matching_complement(&star, set(&[1, 2, 3])).unwrap();
        assert_eq!(m, vec![(0, 1)]);
    }

    #[test]
    fn domination_and_dependence_numbers() {
        for n in 1..6 {
            assert_eq!(gamma_k(&Graph::complete(n), 1).unwrap(), 1);
            assert_eq!(alpha_k(&Graph::complete(n), 1).unwrap(), 1);
        }
        assert_eq!(gamma_k(&Graph::cycle(4), 2).unwrap(), 2);
        assert_eq!(alpha_k(&Graph::cycle(4), 2).unwrap(), 2);
        assert_eq!(gamma_k(&Graph::cycle(5), 1).unwrap(), 2);
        assert_eq!(alpha_k(&Graph::cycle(5), 1).unwrap(), 2);
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n, any::<u64>()).prop_map(|(n, seed)| {
            let mut g = Graph::empty(n);
            let mut x = seed | 1;
            for u in 0..n {
                for v in u + 1..n {
                    x ^= x << 13;
                    x ^= x >> 7;
                    x ^= x << 17;
                    if x & 1 == 1 {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            g
        })
    }

    proptest! {
        #[test]
        fn pruning_never_lowers_phi(g in arb_graph(10), mask in any::<u64>(), k in 1usize..4) {
            let t = VertexSet::from_bits(mask).intersection(g.vertices());
            let d = prune_to_dependent(&g, k, t);
            prop_assert!(d.is_subset(t));
            prop_assert!(is_k_dependent(&g, k, d));
            prop_assert!(phi_k(&g, k, d) >= phi_k(&g, k, t));
        }

        #[test]
        fn max_over_dependent_equals_max_over_all(g in arb_graph(10), k in 1usize..4) {
            let all_max = (0..1u64 << g.n())
                .map(|b| phi_k(&g, k, VertexSet::from_bits(b)))
                .max()
                .unwrap();
            prop_assert_eq!(phi_k_max(&g, k).unwrap(), all_max);
        }

        #[test]
        fn local_maximum_is_dominating_and_improvements_are_strict(
            g in arb_graph(8), k in 1usize..4
        ) {
            let r = k_optimal_local(&g, k).unwrap();
            prop_assert!(is_k_dependent(&g, k, r.d));
            prop_assert!(is_k_dominating(&g, k, r.d));
            prop_assert!(r.phi <= phi_k_max(&g, k).unwrap());
        }

        #[test]
        fn improve_once_increases_phi(g in arb_graph(7), mask in any::<u64>(), k in 1usize..3) {
            let d = prune_to_dependent(&g, k, VertexSet::from_bits(mask).intersection(g.vertices()));
            let outside = g.restrict(d.complement(g.n()));
            prop_assume!(outside.edge_count() <= 8);
            for j in orient_all(&outside).unwrap() {
                if let Improvement::Improved(next) = improve_once(&g, k, d, &j).unwrap() {
                    prop_assert!(is_k_dependent(&g, k, next));
                    prop_assert!(phi_k(&g, k, next) > phi_k(&g, k, d));
                }
            }
        }
    }
}
