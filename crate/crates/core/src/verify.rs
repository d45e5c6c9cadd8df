//! The graph conditions of the characterization as executable checks.
//!
//! For a system satisfying (C0)–(C2) the following are equivalent:
//!
//! * (i) it is the cocircuit set of an oriented matroid ([`check_all`]),
//! * (ii) every crabbed hull `[X1, …, Xk]` is `(h(X1 ∘ … ∘ Xk) - 1)`-connected
//!   ([`check_condition_ii`]),
//! * (iii) any two cocircuits `X ≠ ±Y` are joined by a crabbed path ([`check_condition_iii`]).
//!
//! [`equivalence_harness`] runs all three and records whether they agree. The tope checks and
//! [`uniform_neighbor_check`] test the supporting statements on oriented matroids, and
//! [`cost_comparison`] counts the work of the naive (C3) scan against the crabbed-path route.

use std::collections::HashSet;
use std::time::Instant;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::axioms::{check_all, check_all_counted, check_c0_c2};
use crate::error::{Error, Result};
use crate::generators::is_uniform;
use crate::graphs::{
    cocircuit_graph, crabbed_hull, tope_graph, tope_subgraph, CrabbedSearch, HullSignature, SignedGraph,
};
use crate::lattice::{Budget, FaceLattice};
use crate::sign::{SignSystem, SignVector};
use crate::verdict::{Verdict, Violation};

pub const DEFAULT_EXHAUSTIVE_CAP: usize = 16;
pub const DEFAULT_SAMPLES: usize = 1000;

/// Which tuples `(X1, …, Xk)` condition (ii) is evaluated on.
///
/// Up to `exhaustive_cap` members every nonempty subset is used; above it, all singletons and
/// pairs plus `samples` seeded random subsets of size at least three. Tuples are deduplicated by
/// hull signature, keeping the first one enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Policy {
    pub exhaustive_cap: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for Policy {
    fn default() -> Self {
        Policy { exhaustive_cap: DEFAULT_EXHAUSTIVE_CAP, samples: DEFAULT_SAMPLES, seed: 0 }
    }
}

/// A generating tuple (member indices, canonical order) and the hull it spans.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullTuple {
    pub generators: Vec<usize>,
    pub signature: HullSignature,
    /// Left fold of the generators in canonical order.
    pub composition: SignVector,
}

fn tuple_of(members: &[SignVector], generators: Vec<usize>) -> HullTuple {
    let mut signature = HullSignature::of(&members[generators[0]]);
    let mut composition = SignVector::zero(members[0].len());
    for &g in &generators {
        signature.extend(&members[g]);
        composition = composition.compose_unchecked(&members[g]);
    }
    HullTuple { generators, signature, composition }
}

/// Enumerates generating tuples per `policy`, deduplicated by hull signature.
pub fn enumerate_hulls(members: &[SignVector], policy: &Policy) -> Vec<HullTuple> {
    let m = members.len();
    let mut seen: HashSet<HullSignature> = HashSet::new();
    let mut out = Vec::new();
    if m == 0 {
        return out;
    }
    if m <= policy.exhaustive_cap && m < 31 {
        // Increasing masks: every subset is visited after all of its proper subsets, so each kept
        // tuple is irredundant for its signature.
        let mut sigs: Vec<HullSignature> = Vec::with_capacity(1 << m);
        sigs.push(HullSignature::of(&SignVector::zero(members[0].len())));
        for mask in 1usize..1 << m {
            let low = mask.trailing_zeros() as usize;
            let mut sig = sigs[mask & (mask - 1)];
            sig.extend(&members[low]);
            sigs.push(sig);
            if seen.insert(sig) {
                let generators = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
                out.push(tuple_of(members, generators));
            }
        }
        return out;
    }
    let mut push = |generators: Vec<usize>, out: &mut Vec<HullTuple>| {
        let t = tuple_of(members, generators);
        if seen.insert(t.signature) {
            out.push(t);
        }
    };
    for i in 0..m {
        push(vec![i], &mut out);
    }
    for i in 0..m {
        for j in i + 1..m {
            push(vec![i, j], &mut out);
        }
    }
    if m >= 3 {
        let mut rng = ChaCha8Rng::seed_from_u64(policy.seed);
        for _ in 0..policy.samples {
            let size = rng.gen_range(3..=m);
            let mut generators = sample(&mut rng, m, size).into_vec();
            generators.sort_unstable();
            push(generators, &mut out);
        }
    }
    out
}

struct Prepared {
    lattice: FaceLattice,
    graph: SignedGraph,
}

fn hypothesis(verdict: Verdict) -> Error {
    match verdict {
        Verdict::Fail { violation } => Error::Hypothesis(Box::new(violation)),
        Verdict::Pass { .. } => unreachable!("only failing verdicts are hypothesis errors"),
    }
}

fn prepare(system: &SignSystem, budget: &Budget) -> Result<Prepared> {
    let verdict = check_c0_c2(system);
    if !verdict.is_pass() {
        return Err(hypothesis(verdict));
    }
    let lattice = FaceLattice::build(system, budget)?;
    let graph = cocircuit_graph(&lattice);
    debug_assert_eq!(graph.vertices(), system.members());
    Ok(Prepared { lattice, graph })
}

fn prepare_oriented_matroid(system: &SignSystem, budget: &Budget) -> Result<FaceLattice> {
    let verdict = check_all(system);
    if !verdict.is_pass() {
        return Err(hypothesis(verdict));
    }
    FaceLattice::build(system, budget)
}

/// Outcome of condition (iii).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionIiiOutcome {
    pub verdict: Verdict,
    /// Unordered pairs `X ≠ ±Y` examined.
    pub pairs: usize,
    /// Edge relaxations plus hull-membership tests across all searches.
    pub cost: u64,
}

/// Condition (iii): a crabbed path between every two cocircuits `X ≠ ±Y`.
pub fn check_condition_iii(system: &SignSystem, budget: &Budget) -> Result<ConditionIiiOutcome> {
    let prepared = prepare(system, budget)?;
    Ok(condition_iii_on_graph(&prepared.graph))
}

/// Condition (iii) evaluated on a given cocircuit graph. Every pair is examined so that the work
/// counter does not depend on where a failure occurs; the reported pair is the first failing one
/// in canonical order.
pub fn condition_iii_on_graph(graph: &SignedGraph) -> ConditionIiiOutcome {
    let vs = graph.vertices();
    let m = vs.len();
    let rows: Vec<(Option<usize>, usize, u64)> = (0..m)
        .into_par_iter()
        .map(|i| {
            let mut search = CrabbedSearch::new(graph);
            let mut first_fail = None;
            let mut pairs = 0;
            for j in i + 1..m {
                if vs[j] == vs[i].negate() {
                    continue;
                }
                pairs += 1;
                if !search.run(i, j) && first_fail.is_none() {
                    first_fail = Some(j);
                }
            }
            (first_fail, pairs, search.cost)
        })
        .collect();
    let pairs = rows.iter().map(|r| r.1).sum();
    let cost = rows.iter().map(|r| r.2).sum();
    let verdict = rows
        .iter()
        .enumerate()
        .find_map(|(i, r)| r.0.map(|j| Violation::NoCrabbedPath { x: vs[i], y: vs[j] }))
        .map_or_else(Verdict::pass, Verdict::fail);
    ConditionIiiOutcome { verdict, pairs, cost }
}

/// One evaluated hull of condition (ii).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HullRecord {
    pub generators: Vec<SignVector>,
    pub signature: HullSignature,
    pub vertices: usize,
    pub connectivity: usize,
    /// `h(X1 ∘ … ∘ Xk) - 1`.
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionIiOutcome {
    pub verdict: Verdict,
    pub hulls: Vec<HullRecord>,
}

/// Condition (ii): every enumerated crabbed hull has vertex connectivity at least
/// `h(X1 ∘ … ∘ Xk) - 1`.
pub fn check_condition_ii(system: &SignSystem, policy: &Policy, budget: &Budget) -> Result<ConditionIiOutcome> {
    let prepared = prepare(system, budget)?;
    Ok(condition_ii_on(&prepared, policy))
}

fn condition_ii_on(prepared: &Prepared, policy: &Policy) -> ConditionIiOutcome {
    let members = prepared.graph.vertices();
    let tuples = enumerate_hulls(members, policy);
    let hulls: Vec<HullRecord> = tuples
        .par_iter()
        .map(|t| {
            let hull = crabbed_hull(&prepared.graph, &t.signature);
            let height = prepared.lattice.height(&t.composition).expect("compositions of members are covectors");
            HullRecord {
                generators: t.generators.iter().map(|&g| members[g]).collect(),
                signature: t.signature,
                vertices: hull.vertex_count(),
                connectivity: hull.vertex_connectivity(),
                target: height.saturating_sub(1),
            }
        })
        .collect();
    let verdict = hulls.iter().find(|h| h.connectivity < h.target).map_or_else(Verdict::pass, |h| {
        Verdict::fail(Violation::HullConnectivity {
            generators: h.generators.clone(),
            signature: h.signature,
            connectivity: h.connectivity,
            target: h.target,
        })
    });
    ConditionIiOutcome { verdict, hulls }
}

/// Side-by-side result of conditions (i), (ii) and (iii) on one system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub cocircuits: usize,
    pub edges: usize,
    pub covectors: usize,
    pub rank: Option<usize>,
    pub verdict_i: Verdict,
    pub verdict_ii: Verdict,
    pub hulls_checked: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub hulls: Vec<HullRecord>,
    pub verdict_iii: Verdict,
    /// (i) and (iii) pass or fail together.
    pub agree: bool,
    /// (i) passing implies (ii) passing.
    pub ii_consistent: bool,
    pub cost_naive: u64,
    pub cost_graph: u64,
}

impl EquivalenceReport {
    /// Whether the report is consistent with the characterization.
    pub fn holds(&self) -> bool {
        self.agree && self.ii_consistent
    }
}

/// Runs (i), (ii) and (iii) on a system satisfying (C0)–(C2).
pub fn equivalence_harness(system: &SignSystem, policy: &Policy, budget: &Budget) -> Result<EquivalenceReport> {
    let prepared = prepare(system, budget)?;
    let naive = check_all_counted(system);
    let iii = condition_iii_on_graph(&prepared.graph);
    let ii = condition_ii_on(&prepared, policy);
    let agree = naive.verdict.is_pass() == iii.verdict.is_pass();
    let ii_consistent = !naive.verdict.is_pass() || ii.verdict.is_pass();
    Ok(EquivalenceReport {
        cocircuits: system.len(),
        edges: prepared.graph.edge_count(),
        covectors: prepared.lattice.len(),
        rank: prepared.lattice.rank().ok(),
        verdict_i: naive.verdict,
        verdict_ii: ii.verdict,
        hulls_checked: ii.hulls.len(),
        hulls: ii.hulls,
        verdict_iii: iii.verdict,
        agree,
        ii_consistent,
        cost_naive: naive.inspections,
        cost_graph: iii.cost,
    })
}

/// Every two topes are joined by a crabbed path in the tope graph.
pub fn tope_paths_check(system: &SignSystem, budget: &Budget) -> Result<Verdict> {
    let lattice = prepare_oriented_matroid(system, budget)?;
    let graph = tope_graph(&lattice);
    let vs = graph.vertices();
    let m = vs.len();
    let failures: Vec<Option<usize>> = (0..m)
        .into_par_iter()
        .map(|i| {
            let mut search = CrabbedSearch::new(&graph);
            (i + 1..m).find(|&j| !search.run(i, j))
        })
        .collect();
    Ok(failures
        .iter()
        .enumerate()
        .find_map(|(i, f)| f.map(|j| Violation::NoTopePath { s: vs[i], t: vs[j] }))
        .map_or_else(Verdict::pass, Verdict::fail))
}

/// For every tope `U` of a rank-`r` oriented matroid, the cocircuits conforming to `U` induce an
/// `(r - 1)`-connected subgraph of the cocircuit graph.
pub fn tope_subgraphs_check(system: &SignSystem, budget: &Budget) -> Result<Verdict> {
    let lattice = prepare_oriented_matroid(system, budget)?;
    let target = lattice.rank()?.saturating_sub(1);
    let graph = cocircuit_graph(&lattice);
    let topes = lattice.topes();
    let results: Vec<usize> = topes.par_iter().map(|t| tope_subgraph(&graph, t).vertex_connectivity()).collect();
    Ok(topes.iter().zip(&results).find(|(_, &k)| k < target).map_or_else(Verdict::pass, |(t, &k)| {
        Verdict::fail(Violation::TopeSubgraph { tope: *t.vector(), connectivity: k, target })
    }))
}

/// In a uniform oriented matroid, each generator `Xi` of an enumerated hull has exactly
/// `h(X1 ∘ … ∘ Xk) - 1` neighbors inside the hull.
pub fn uniform_neighbor_check(system: &SignSystem, policy: &Policy, budget: &Budget) -> Result<Verdict> {
    let lattice = prepare_oriented_matroid(system, budget)?;
    let rank = lattice.rank()?;
    if !is_uniform(system) || system.iter().any(|x| x.zero_support().len() + 1 != rank) {
        return Err(Error::NotUniform(format!(
            "cocircuit zero-supports do not all have size r - 1 = {}",
            rank as isize - 1
        )));
    }
    let graph = cocircuit_graph(&lattice);
    let members = graph.vertices();
    let tuples = enumerate_hulls(members, policy);
    let failures: Vec<Option<Violation>> = tuples
        .par_iter()
        .map(|t| {
            let hull = crabbed_hull(&graph, &t.signature);
            let target = lattice.height(&t.composition).expect("compositions are covectors").saturating_sub(1);
            t.generators.iter().find_map(|&g| {
                let v = members[g];
                let degree = hull.degree(hull.index_of(&v).expect("generators lie in their hull"));
                (degree != target).then(|| Violation::NeighborCount {
                    generators: t.generators.iter().map(|&i| members[i]).collect(),
                    vertex: v,
                    degree,
                    target,
                })
            })
        })
        .collect();
    Ok(failures.into_iter().flatten().next().map_or_else(Verdict::pass, Verdict::fail))
}

/// Wall-clock seconds of the two recognition routes; not reproducible across runs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Timings {
    pub naive_seconds: f64,
    pub graph_seconds: f64,
}

/// Work of the naive (C3) scan against the crabbed-path check of (iii) on one system.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CostReport {
    pub cocircuits: usize,
    pub edges: usize,
    pub cost_naive: u64,
    pub cost_graph: u64,
    pub naive_pass: bool,
    pub graph_pass: bool,
    #[serde(skip)]
    pub timings: Timings,
}

impl CostReport {
    pub fn ratio(&self) -> f64 {
        if self.cost_graph == 0 {
            f64::INFINITY
        } else {
            self.cost_naive as f64 / self.cost_graph as f64
        }
    }
}

/// Counts both routes on a system satisfying (C0)–(C2). The cocircuit graph is built before the
/// clock starts for the graph route.
pub fn cost_comparison(system: &SignSystem, budget: &Budget) -> Result<CostReport> {
    let prepared = prepare(system, budget)?;
    let start = Instant::now();
    let naive = check_all_counted(system);
    let naive_seconds = start.elapsed().as_secs_f64();
    let start = Instant::now();
    let iii = condition_iii_on_graph(&prepared.graph);
    let graph_seconds = start.elapsed().as_secs_f64();
    Ok(CostReport {
        cocircuits: system.len(),
        edges: prepared.graph.edge_count(),
        cost_naive: naive.inspections,
        cost_graph: iii.cost,
        naive_pass: naive.verdict.is_pass(),
        graph_pass: iii.verdict.is_pass(),
        timings: Timings { naive_seconds, graph_seconds },
    })
}
