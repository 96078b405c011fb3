//! The checkable statements and how each one is decided on a single
//! `(graph, k)` instance.

use std::collections::BTreeSet;

use clap::ValueEnum;
use rand::seq::IndexedRandom;
use rand::Rng;
use serde_json::{json, Value};

use koptlab_core::coloring::KEdgeChromaticSubgraph;
use koptlab_core::error::Error;
use koptlab_core::favaron::{
    alpha_k, all_k_optimal_sets, gamma_k, is_k_dominating, verify_theorem_main,
};
use koptlab_core::generate::rng;
use koptlab_core::graph::{orient_all_capped, ORIENT_ALL_EDGE_CAP};
use koptlab_core::kernel::{
    decomposition_to_saturating, search_good_decomposition, validate_good, DecompositionSearch,
    SearchBudget, DECOMP_EDGE_CAP,
};
use koptlab_core::matching::{
    auxiliary_extension, check_generalized_lebensold, lebensold_classic, DemandProfile,
    LebensoldOutcome,
};
use koptlab_core::saturation::{
    chordal_full_degree, chordal_order, full_degree_subgraph_capped, is_saturating,
    order_orientation, saturable_bruteforce_capped, saturate_chordal, ListAssignment,
    BRUTE_EDGE_CAP, BRUTE_PALETTE_CAP,
};
use koptlab_core::tuza::{nu_exact, tau_exact, verify_tuza_connection_capped, ALPHA_EDGE_CAP};
use koptlab_core::{BipartiteSplit, Graph, Orientation, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum)]
pub enum Property {
    /// Every k-optimal set is k-dominating.
    Favaron,
    /// Cross subgraph for every k-optimal set and every orientation of G[V − D].
    CrossSubgraph,
    /// Flow verdict vs. brute force vs. the classic check on the extension.
    Lebensold,
    /// ν and τ of I_k ∨ h against α′_k(h) and k|V(h)| − φ_k(h).
    TuzaJoin,
    /// τ ≤ 2ν on I_k ∨ h.
    ConjTuzaSpecial,
    /// Degree-k subgraph outside every k-optimal set.
    ConjSec1deg,
    /// Some orientation has a good decomposition.
    ConjDecomp,
    /// The constructive degree-k subgraph on chordal graphs.
    ChordalDegreeK,
    /// Good decomposition turned into saturating colorings for random lists.
    DecompSaturating,
    /// Chordal saturating colorings for random lists, confirmed by brute force.
    ChordalSaturating,
    /// γ_k ≤ α_k.
    GammaAlpha,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Holds,
    Violated,
    Skipped,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub witness: Value,
}

impl Verdict {
    fn holds(witness: Value) -> Self {
        Verdict { outcome: Outcome::Holds, witness }
    }

    fn violated(witness: Value) -> Self {
        Verdict { outcome: Outcome::Violated, witness }
    }

    pub fn skipped(reason: impl Into<String>) -> Self {
        Verdict {
            outcome: Outcome::Skipped,
            witness: json!({ "reason": reason.into() }),
        }
    }

    fn check(ok: bool, witness: Value) -> Self {
        if ok {
            Verdict::holds(witness)
        } else {
            Verdict::violated(witness)
        }
    }
}

/// Knobs shared by all properties.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Settings {
    /// Ignore the per-property size ceilings.
    pub cap_override: bool,
    /// Replaces the edge caps of the exponential solvers.
    pub edge_cap: Option<usize>,
    /// Random list assignments per instance for the list-coloring properties.
    pub list_samples: usize,
}

pub const CAP_ENV: &str = "KOPTLAB_CAP_EDGES";

impl Default for Settings {
    fn default() -> Self {
        Settings {
            cap_override: false,
            edge_cap: None,
            list_samples: 10,
        }
    }
}

impl Settings {
    /// Defaults, with the edge cap taken from `KOPTLAB_CAP_EDGES` when set.
    pub fn from_env() -> Self {
        Settings {
            edge_cap: std::env::var(CAP_ENV).ok().and_then(|v| v.trim().parse().ok()),
            ..Settings::default()
        }
    }

    fn cap(&self, default: usize) -> usize {
        self.edge_cap.unwrap_or(default)
    }
}

/// Largest instance a property accepts without `--cap-override`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ceiling {
    pub vertices: usize,
    pub edges: usize,
}

const LEBENSOLD_DEMAND_SAMPLES: usize = 32;

impl Property {
    pub const ALL: [Property; 11] = [
        Property::Favaron,
        Property::CrossSubgraph,
        Property::Lebensold,
        Property::TuzaJoin,
        Property::ConjTuzaSpecial,
        Property::ConjSec1deg,
        Property::ConjDecomp,
        Property::ChordalDegreeK,
        Property::DecompSaturating,
        Property::ChordalSaturating,
        Property::GammaAlpha,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Property::Favaron => "favaron",
            Property::CrossSubgraph => "cross-subgraph",
            Property::Lebensold => "lebensold",
            Property::TuzaJoin => "tuza-join",
            Property::ConjTuzaSpecial => "conj-tuza-special",
            Property::ConjSec1deg => "conj-sec1deg",
            Property::ConjDecomp => "conj-decomp",
            Property::ChordalDegreeK => "chordal-degree-k",
            Property::DecompSaturating => "decomp-saturating",
            Property::ChordalSaturating => "chordal-saturating",
            Property::GammaAlpha => "gamma-alpha",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        Property::ALL.into_iter().find(|p| p.id() == id)
    }

    /// Properties that do not depend on `k` get a single report with `k = 0`.
    pub fn uses_k(self) -> bool {
        self != Property::ConjDecomp
    }

    pub fn ceiling(self) -> Ceiling {
        let (vertices, edges) = match self {
            Property::Favaron | Property::GammaAlpha => (16, usize::MAX),
            Property::CrossSubgraph => (10, usize::MAX),
            Property::Lebensold => (12, 24),
            Property::TuzaJoin | Property::ConjTuzaSpecial => (8, 16),
            Property::ConjSec1deg | Property::ChordalDegreeK => (14, usize::MAX),
            Property::ConjDecomp | Property::DecompSaturating => (usize::MAX, DECOMP_EDGE_CAP),
            Property::ChordalSaturating => (14, usize::MAX),
        };
        Ceiling { vertices, edges }
    }

    /// Decides one instance. Core errors never escape: caps become skips,
    /// failed constructive steps become violations.
    pub fn check(self, g: &Graph, k: usize, settings: &Settings) -> Verdict {
        if self.uses_k() && k == 0 {
            return Verdict::skipped("k must be positive");
        }
        let c = self.ceiling();
        if !settings.cap_override && (g.n() > c.vertices || g.edge_count() > c.edges) {
            return Verdict::skipped(format!(
                "{} vertices / {} edges exceed the ceiling of {} / {}",
                g.n(),
                g.edge_count(),
                c.vertices,
                c.edges
            ));
        }
        let run = match self {
            Property::Favaron => favaron(g, k),
            Property::CrossSubgraph => cross_subgraph(g, k, settings),
            Property::Lebensold => lebensold(g, k),
            Property::TuzaJoin => tuza_join(g, k, settings),
            Property::ConjTuzaSpecial => tuza_special(g, k),
            Property::ConjSec1deg => sec1deg(g, k, settings),
            Property::ConjDecomp => decomp(g, settings),
            Property::ChordalDegreeK => chordal_degree_k(g, k),
            Property::DecompSaturating => decomp_sat(g, k, settings),
            Property::ChordalSaturating => chordal_sat(g, k, settings),
            Property::GammaAlpha => gamma_alpha(g, k),
        };
        match run {
            Ok(v) => v,
            Err(e @ (Error::CapExceeded { .. } | Error::InvalidGraph(_))) => Verdict::skipped(e.to_string()),
            Err(e) => Verdict::violated(json!({ "error": e.to_string() })),
        }
    }
}

type Run = koptlab_core::Result<Verdict>;

fn favaron(g: &Graph, k: usize) -> Run {
    let sets = all_k_optimal_sets(g, k)?;
    let bad = sets.iter().find(|&&d| !is_k_dominating(g, k, d));
    Ok(match bad {
        Some(d) => Verdict::violated(json!({ "d": d, "reason": "k-optimal set is not k-dominating" })),
        None => Verdict::holds(json!({ "d": sets[0], "optimal_sets": sets.len() })),
    })
}

fn cross_subgraph(g: &Graph, k: usize, settings: &Settings) -> Run {
    let sets = all_k_optimal_sets(g, k)?;
    let cap = settings.cap(ORIENT_ALL_EDGE_CAP);
    let mut orientations = 0u64;
    for &d in &sets {
        for j in orient_all_capped(&g.restrict(d.complement(g.n())), cap)? {
            verify_theorem_main(g, k, d, &j)?;
            orientations += 1;
        }
    }
    Ok(Verdict::holds(json!({ "optimal_sets": sets.len(), "orientations": orientations })))
}

/// FNV-1a over the instance key, so sampled extras replay exactly.
fn instance_seed(g: &Graph, k: usize) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for word in g.edges().iter().flat_map(|&(u, v)| [u, v]).chain([g.n(), k]) {
        for b in (word as u64).to_le_bytes() {
            h = (h ^ b as u64).wrapping_mul(0x0100_0000_01b3);
        }
    }
    h
}

/// Is there a set of cross edges giving every `x ∈ X` exactly `f(x)` edges
/// and every `D` vertex at most `k`? Tries every choice per `X` vertex.
pub fn degree_subgraph_exists(split: &BipartiteSplit, profile: &DemandProfile) -> bool {
    fn go(xs: &[usize], split: &BipartiteSplit, profile: &DemandProfile, load: &mut [usize]) -> bool {
        let Some((&x, rest)) = xs.split_first() else {
            return true;
        };
        let nbrs = split.cross().neighbors(x).to_vec();
        pick(&nbrs, profile.demand(x), rest, split, profile, load)
    }
    fn pick(
        nbrs: &[usize],
        need: usize,
        rest: &[usize],
        split: &BipartiteSplit,
        profile: &DemandProfile,
        load: &mut [usize],
    ) -> bool {
        if need == 0 {
            return go(rest, split, profile, load);
        }
        if nbrs.len() < need {
            return false;
        }
        let v = nbrs[0];
        if load[v] < profile.k() {
            load[v] += 1;
            let ok = pick(&nbrs[1..], need - 1, rest, split, profile, load);
            load[v] -= 1;
            if ok {
                return true;
            }
        }
        pick(&nbrs[1..], need, rest, split, profile, load)
    }
    let xs = split.x_side().to_vec();
    let mut load = vec![0; split.base().n()];
    go(&xs, split, profile, &mut load)
}

fn witness_ok(split: &BipartiteSplit, profile: &DemandProfile, m: &KEdgeChromaticSubgraph) -> bool {
    m.validate().is_ok()
        && m.edges().iter().all(|&(u, v)| split.cross().has_edge(u, v))
        && split.x_side().iter().all(|x| m.degree(x) >= profile.demand(x))
}

fn lebensold(g: &Graph, k: usize) -> Run {
    let Some(side) = g.bipartition() else {
        return Ok(Verdict::skipped("not bipartite"));
    };
    let mut r = rng(instance_seed(g, k));
    let mut feasible = 0;
    let mut checked = 0;
    for d_side in [side, side.complement(g.n())] {
        let split = BipartiteSplit::new(g, d_side)?;
        for _ in 0..LEBENSOLD_DEMAND_SAMPLES {
            let demands: Vec<usize> = (0..g.n())
                .map(|v| if split.x_side().contains(v) { r.random_range(0..=k) } else { 0 })
                .collect();
            let profile = DemandProfile::new(k, demands.clone());
            let flow = check_generalized_lebensold(&split, &profile)?;
            let brute = degree_subgraph_exists(&split, &profile);
            let classic = lebensold_classic(&auxiliary_extension(&split, &profile)?, k)?.is_feasible();
            let valid = match &flow {
                LebensoldOutcome::Feasible(m) => witness_ok(&split, &profile, m),
                LebensoldOutcome::Infeasible(h) => profile.total_on(h.s) > 0,
            };
            checked += 1;
            if flow.is_feasible() != brute || classic != brute || !valid {
                return Ok(Verdict::violated(json!({
                    "d_side": d_side,
                    "demands": demands,
                    "flow": flow.is_feasible(),
                    "brute_force": brute,
                    "classic_on_extension": classic,
                    "witness_valid": valid,
                })));
            }
            feasible += usize::from(brute);
        }
    }
    Ok(Verdict::holds(json!({ "profiles": checked, "feasible": feasible })))
}

fn tuza_join(h: &Graph, k: usize, settings: &Settings) -> Run {
    if !h.is_triangle_free() {
        return Ok(Verdict::skipped("h has a triangle"));
    }
    let report = verify_tuza_connection_capped(h, k, settings.cap(ALPHA_EDGE_CAP))?;
    Ok(Verdict::check(report.equalities_hold(), json!(report)))
}

fn tuza_special(h: &Graph, k: usize) -> Run {
    if !h.is_triangle_free() {
        return Ok(Verdict::skipped("h has a triangle"));
    }
    let g = Graph::join_independent(k, h)?;
    let packing = nu_exact(&g)?;
    let cover = tau_exact(&g)?;
    let ok = cover.len() <= 2 * packing.len();
    Ok(Verdict::check(
        ok,
        json!({ "nu": packing.len(), "tau": cover.len(), "packing": packing, "cover": cover }),
    ))
}

fn sec1deg(g: &Graph, k: usize, settings: &Settings) -> Run {
    let sets = all_k_optimal_sets(g, k)?;
    let mut routes = BTreeSet::new();
    for &d in &sets {
        let inner = g.restrict(d.complement(g.n()));
        let m = if chordal_order(&inner).is_some() {
            routes.insert("chordal");
            Some(chordal_full_degree(g, k, d)?)
        } else {
            routes.insert("exact");
            full_degree_subgraph_capped(g, k, d, settings.cap(BRUTE_EDGE_CAP))?
        };
        if m.is_none() {
            return Ok(Verdict::violated(json!({
                "d": d,
                "reason": "no k-edge-chromatic subgraph gives every vertex outside D degree k",
            })));
        }
    }
    Ok(Verdict::holds(json!({ "optimal_sets": sets.len(), "routes": routes })))
}

fn decomposition(g: &Graph, settings: &Settings) -> koptlab_core::Result<DecompositionSearch> {
    let budget = SearchBudget {
        edge_cap: settings.cap(DECOMP_EDGE_CAP),
        ..SearchBudget::default()
    };
    search_good_decomposition(g, &budget)
}

fn decomp(g: &Graph, settings: &Settings) -> Run {
    let found = decomposition(g, settings)?;
    Ok(match &found {
        DecompositionSearch::Found { certificate } => {
            let ok = validate_good(certificate.base(), certificate.decomposition()).is_valid();
            Verdict::check(ok, json!(found))
        }
        DecompositionSearch::Exhausted { complete: true, .. } => Verdict::violated(json!(found)),
        DecompositionSearch::Exhausted { complete: false, .. } => Verdict::skipped("search budget spent"),
    })
}

fn chordal_degree_k(g: &Graph, k: usize) -> Run {
    if chordal_order(g).is_none() {
        return Ok(Verdict::skipped("not chordal"));
    }
    let sets = all_k_optimal_sets(g, k)?;
    let mut first = None;
    for &d in &sets {
        let m = chordal_full_degree(g, k, d)?;
        let x = d.complement(g.n());
        let ok = m.validate().is_ok() && m.k() == k && x.iter().all(|v| m.degree(v) == k);
        if !ok {
            return Ok(Verdict::violated(json!({ "d": d, "subgraph": m })));
        }
        first.get_or_insert(json!({ "d": d, "subgraph": m }));
    }
    Ok(Verdict::holds(json!({ "optimal_sets": sets.len(), "first": first })))
}

/// Random lists with `|l(v)| ≤ d⁺_J(v)`, colors drawn from `1..=palette`.
pub fn random_lists<R: Rng>(j: &Orientation, palette: usize, r: &mut R) -> ListAssignment {
    let colors: Vec<usize> = (1..=palette).collect();
    let mut l = ListAssignment::empty(j.n());
    for v in 0..j.n() {
        let size = r.random_range(0..=j.out_degree(v).min(palette));
        l.set(v, colors.choose_multiple(r, size).copied().collect());
    }
    l
}

/// Lists for the list-coloring properties use the palette `1..=k+1`.
fn palette(k: usize) -> usize {
    (k + 1).min(BRUTE_PALETTE_CAP)
}

fn lists_json(l: &ListAssignment) -> Value {
    json!(l)
}

fn chordal_sat(g: &Graph, k: usize, settings: &Settings) -> Run {
    let Some(ord) = chordal_order(g) else {
        return Ok(Verdict::skipped("not chordal"));
    };
    let j = order_orientation(g, &ord);
    let cap = settings.cap(BRUTE_EDGE_CAP);
    let mut r = rng(instance_seed(g, k));
    let mut confirmed = 0;
    for _ in 0..settings.list_samples {
        let l = random_lists(&j, palette(k), &mut r);
        let psi = saturate_chordal(g, &ord, &l)?;
        if !is_saturating(g, &l, &psi)? {
            return Ok(Verdict::violated(json!({ "lists": lists_json(&l), "coloring": psi })));
        }
        if g.edge_count() <= cap {
            if saturable_bruteforce_capped(g, &l, cap)?.is_none() {
                return Ok(Verdict::violated(json!({
                    "lists": lists_json(&l),
                    "coloring": psi,
                    "reason": "brute force finds no saturating coloring",
                })));
            }
            confirmed += 1;
        }
    }
    Ok(Verdict::holds(json!({ "samples": settings.list_samples, "brute_force_confirmed": confirmed })))
}

fn decomp_sat(g: &Graph, k: usize, settings: &Settings) -> Run {
    let found = decomposition(g, settings)?;
    let Some(cert) = found.certificate() else {
        return Ok(Verdict::skipped("no good decomposition found"));
    };
    let mut r = rng(instance_seed(g, k));
    for _ in 0..settings.list_samples {
        let l = random_lists(cert.base(), palette(k), &mut r);
        let xi = decomposition_to_saturating(g, cert, &l)?;
        if !is_saturating(g, &l, &xi)? {
            return Ok(Verdict::violated(json!({
                "certificate": cert,
                "lists": lists_json(&l),
                "coloring": xi,
            })));
        }
    }
    Ok(Verdict::holds(json!({ "certificate": cert, "samples": settings.list_samples })))
}

fn gamma_alpha(g: &Graph, k: usize) -> Run {
    let (gamma, alpha) = (gamma_k(g, k)?, alpha_k(g, k)?);
    Ok(Verdict::check(gamma <= alpha, json!({ "gamma_k": gamma, "alpha_k": alpha })))
}

/// Parses `a,c` or `0,2` into a vertex set.
pub fn parse_set(text: &str, n: usize) -> Option<VertexSet> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| koptlab_core::io::parse_vertex(t).filter(|&v| v < n))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for p in Property::ALL {
            assert_eq!(Property::from_id(p.id()), Some(p));
            assert_eq!(p.to_possible_value().unwrap().get_name(), p.id());
        }
    }

    #[test]
    fn small_instances_hold() {
        let s = Settings::default();
        let c5 = Graph::cycle(5);
        for p in Property::ALL {
            let v = p.check(&c5, 2, &s);
            assert_ne!(v.outcome, Outcome::Violated, "{}: {:?}", p.id(), v.witness);
        }
        assert_eq!(Property::TuzaJoin.check(&Graph::path(4), 2, &s).outcome, Outcome::Holds);
        assert_eq!(Property::ChordalDegreeK.check(&Graph::complete(4), 2, &s).outcome, Outcome::Holds);
        assert_eq!(Property::Lebensold.check(&Graph::cycle(6), 2, &s).outcome, Outcome::Holds);
    }

    #[test]
    fn ceilings_and_preconditions_skip() {
        let s = Settings::default();
        let big = Graph::path(20);
        assert_eq!(Property::CrossSubgraph.check(&big, 1, &s).outcome, Outcome::Skipped);
        assert_eq!(Property::TuzaJoin.check(&Graph::complete(3), 1, &s).outcome, Outcome::Skipped);
        assert_eq!(Property::Lebensold.check(&Graph::cycle(5), 1, &s).outcome, Outcome::Skipped);
        assert_eq!(Property::Favaron.check(&big, 0, &s).outcome, Outcome::Skipped);
        let over = Settings { cap_override: true, ..Settings::default() };
        // past the ceiling the core caps still refuse
        let dense = Graph::complete(12);
        assert_eq!(Property::ConjDecomp.check(&dense, 0, &over).outcome, Outcome::Skipped);
    }

    #[test]
    fn brute_degree_subgraph() {
        let g = Graph::complete_bipartite(2, 2);
        let split = BipartiteSplit::new(&g, [2, 3].into_iter().collect()).unwrap();
        assert!(degree_subgraph_exists(&split, &DemandProfile::new(1, vec![1, 1, 0, 0])));
        let star = Graph::star(2);
        let hub = BipartiteSplit::new(&star, [0].into_iter().collect()).unwrap();
        assert!(!degree_subgraph_exists(&hub, &DemandProfile::new(1, vec![0, 1, 1])));
        assert!(degree_subgraph_exists(&hub, &DemandProfile::new(2, vec![0, 1, 1])));
        assert!(degree_subgraph_exists(&split, &DemandProfile::new(2, vec![2, 2, 0, 0])));
    }

    #[test]
    fn set_parsing() {
        assert_eq!(parse_set("a,c", 3), Some([0, 2].into_iter().collect()));
        assert_eq!(parse_set("0, 1", 3), Some([0, 1].into_iter().collect()));
        assert_eq!(parse_set("d", 3), None);
    }

    #[test]
    fn seeds_depend_on_the_instance() {
        let a = instance_seed(&Graph::path(3), 1);
        assert_eq!(a, instance_seed(&Graph::path(3), 1));
        assert_ne!(a, instance_seed(&Graph::path(3), 2));
        assert_ne!(a, instance_seed(&Graph::complete(3), 1));
    }
}
