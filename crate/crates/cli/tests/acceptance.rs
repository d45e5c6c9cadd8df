//! Acceptance suite: one line per criterion on stderr, then a single assertion over all of them.
//!
//! Run with `cargo test -p cocircuit-cli --test acceptance -- --nocapture`.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use cocircuit::axioms::{check_all, check_c0_c2};
use cocircuit::generators::{cyclic, from_matrix, is_uniform, mutate, random_c0c2, u2n, Mutation, VectorConfiguration};
use cocircuit::graphs::cocircuit_graph;
use cocircuit::lattice::{contraction_rank_identity, Budget, FaceLattice};
use cocircuit::verify::{
    check_condition_ii, check_condition_iii, cost_comparison, tope_paths_check, tope_subgraphs_check,
    uniform_neighbor_check, Policy,
};
use cocircuit::{SignSystem, SignVector, Violation};

struct Instance {
    name: String,
    system: SignSystem,
}

fn instance(name: impl Into<String>, system: SignSystem) -> Instance {
    Instance { name: name.into(), system }
}

/// Integer matrices with parallel, antiparallel or otherwise degenerate columns.
fn hand_matrices() -> Vec<(&'static str, Vec<Vec<i64>>)> {
    vec![
        ("u23", vec![vec![1, 0, 1], vec![0, 1, 1]]),
        ("parallel-pair", vec![vec![1, 2, 0, 1], vec![0, 0, 1, 1]]),
        ("antiparallel-pair", vec![vec![1, -1, 0], vec![0, 0, 1]]),
        ("repeated-column", vec![vec![1, 1, 0], vec![0, 0, 1]]),
        ("rank-one", vec![vec![1, 2, -3]]),
        ("coplanar-triple", vec![vec![1, 0, 0, 1], vec![0, 1, 0, 1], vec![0, 0, 1, 0]]),
        ("collinear-points", vec![vec![1, 1, 1, 0, 1], vec![0, 1, 2, 0, 1], vec![0, 0, 0, 1, 1]]),
        ("braid-a3", vec![vec![1, 0, 0, 1, 1, 0], vec![0, 1, 0, -1, 0, 1], vec![0, 0, 1, 0, -1, -1]]),
        ("parallel-and-opposite", vec![vec![1, 2, 0, 0, 1, -1], vec![0, 0, 1, 0, 1, -1], vec![0, 0, 0, 1, 1, -1]]),
        (
            "simplex-plus-center",
            vec![vec![1, 0, 0, 0, 1], vec![0, 1, 0, 0, 1], vec![0, 0, 1, 0, 1], vec![0, 0, 0, 1, 1]],
        ),
        ("rank-two-mixed", vec![vec![1, 0, 1, 1, 2], vec![0, 1, 1, -1, 2]]),
        ("coordinate-plane", vec![vec![1, 0], vec![0, 1]]),
    ]
}

/// Generated oriented matroids: the cyclic and rank-two families and the hand matrices.
fn positive_corpus() -> Vec<Instance> {
    let mut out = Vec::new();
    for r in 2..=4 {
        for n in r..=7 {
            out.push(instance(format!("cyclic({r},{n})"), cyclic(r, n).unwrap()));
        }
    }
    for n in 2..=16 {
        out.push(instance(format!("u2n({n})"), u2n(n).unwrap()));
    }
    for (name, rows) in hand_matrices() {
        let config = VectorConfiguration::new(rows).unwrap();
        out.push(instance(format!("matrix {name}"), from_matrix(&config).unwrap()));
    }
    out
}

/// Seeded mutants of the positive corpus and random systems, all satisfying (C0)–(C2).
fn fuzz_corpus(positive: &[Instance]) -> Vec<Instance> {
    let kinds = [Mutation::DropPair, Mutation::FlipEntry, Mutation::AddRandom];
    let mut out = Vec::new();
    let mut seed = 0u64;
    while out.len() < 150 {
        let base = &positive[seed as usize % positive.len()];
        let kind = kinds[(seed / positive.len() as u64) as usize % kinds.len()];
        if let Ok(m) = mutate(&base.system, kind, seed) {
            if check_c0_c2(&m).is_pass() {
                out.push(instance(format!("mutate({}, {kind:?}, {seed})", base.name), m));
            }
        }
        seed += 1;
    }
    for seed in 0..100u64 {
        let n = 4 + (seed % 4) as usize;
        let pairs = 1 + (seed % 5) as usize;
        let sys = random_c0c2(n, pairs, seed).unwrap();
        assert!(check_c0_c2(&sys).is_pass());
        out.push(instance(format!("random_c0c2({n},{pairs},{seed})"), sys));
    }
    out
}

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn criterion_1(positive: &[Instance], fuzz: &[Instance]) -> Outcome {
    let start = Instant::now();
    let budget = Budget::default();
    let (mut oms, mut non_oms) = (0, 0);
    for inst in positive.iter().chain(fuzz) {
        let i = check_all(&inst.system).is_pass();
        let iii =
            check_condition_iii(&inst.system, &budget).map_err(|e| format!("{}: {e}", inst.name))?.verdict.is_pass();
        if i != iii {
            return Err(format!("{}: axioms {i}, crabbed paths {iii}", inst.name));
        }
        if i {
            oms += 1;
        } else {
            non_oms += 1;
        }
    }
    if positive.iter().any(|p| !check_all(&p.system).is_pass()) {
        return Err("a generated positive instance fails the axioms".into());
    }
    if non_oms == 0 {
        return Err("the fuzz corpus contains no non-oriented-matroid".into());
    }
    let secs = start.elapsed().as_secs_f64();
    if secs > 120.0 {
        return Err(format!("corpus took {secs:.1}s"));
    }
    Ok(format!("{} instances agree ({oms} oriented matroids, {non_oms} not)", positive.len() + fuzz.len()))
}

fn criterion_2(positive: &[Instance]) -> Outcome {
    let mut hulls = 0;
    for inst in positive {
        let out =
            check_condition_ii(&inst.system, &Policy::default(), &Budget::default()).map_err(|e| e.to_string())?;
        if let Some(v) = out.verdict.violation() {
            return Err(format!("{}: {v}", inst.name));
        }
        hulls += out.hulls.len();
    }
    Ok(format!("{hulls} hulls over {} instances", positive.len()))
}

fn uniform(inst: &Instance, lattice: &FaceLattice) -> bool {
    let Ok(rank) = lattice.rank() else { return false };
    is_uniform(&inst.system) && inst.system.iter().all(|x| x.zero_support().len() + 1 == rank)
}

fn criterion_3(positive: &[Instance]) -> Outcome {
    let mut checked = 0;
    let mut failures: Vec<String> = Vec::new();
    for inst in positive {
        let lattice = FaceLattice::build(&inst.system, &Budget::default()).unwrap();
        if !uniform(inst, &lattice) {
            continue;
        }
        checked += 1;
        let verdict =
            uniform_neighbor_check(&inst.system, &Policy::default(), &Budget::default()).map_err(|e| e.to_string())?;
        if let Some(Violation::NeighborCount { generators, vertex, degree, target }) = verdict.violation() {
            let gens: Vec<String> = generators.iter().map(SignVector::to_string).collect();
            failures.push(format!(
                "{}: [{}] {vertex} has {degree} neighbors, h-1 = {target}",
                inst.name,
                gens.join(",")
            ));
        }
    }
    if failures.is_empty() {
        Ok(format!("{checked} uniform instances"))
    } else {
        Err(format!("{} of {checked} uniform instances have an exception; first: {}", failures.len(), failures[0]))
    }
}

fn criterion_4(positive: &[Instance]) -> Outcome {
    for inst in positive {
        let v = tope_paths_check(&inst.system, &Budget::default()).map_err(|e| format!("{}: {e}", inst.name))?;
        if let Some(v) = v.violation() {
            return Err(format!("{}: {v}", inst.name));
        }
    }
    Ok(format!("{} instances", positive.len()))
}

fn criterion_5(positive: &[Instance]) -> Outcome {
    let mut checked = 0;
    for inst in positive {
        let lattice = FaceLattice::build(&inst.system, &Budget::default()).unwrap();
        if lattice.rank().map_err(|e| e.to_string())? > 4 {
            continue;
        }
        checked += 1;
        let v = tope_subgraphs_check(&inst.system, &Budget::default()).map_err(|e| format!("{}: {e}", inst.name))?;
        if let Some(v) = v.violation() {
            return Err(format!("{}: {v}", inst.name));
        }
    }
    Ok(format!("{checked} instances of rank at most 4"))
}

fn criterion_6(positive: &[Instance]) -> Outcome {
    let budget = Budget::default();
    let mut covectors = 0;
    for inst in positive {
        let lattice = FaceLattice::build(&inst.system, &budget).unwrap();
        if lattice.len() > 5_000 {
            continue;
        }
        for u in lattice.covectors().iter() {
            let v = contraction_rank_identity(&lattice, u, &budget).map_err(|e| format!("{}: {e}", inst.name))?;
            if let Some(v) = v.violation() {
                return Err(format!("{}: {v}", inst.name));
            }
            covectors += 1;
        }
    }
    Ok(format!("{covectors} covectors"))
}

/// Every composition of members, by naive fixpoint iteration over all pairs.
fn brute_closure(members: &[SignVector], n: usize) -> BTreeSet<SignVector> {
    let mut all: BTreeSet<SignVector> = members.iter().copied().collect();
    all.insert(SignVector::zero(n));
    loop {
        let current: Vec<SignVector> = all.iter().copied().collect();
        let before = all.len();
        for x in &current {
            for y in &current {
                all.insert(x.compose(y).unwrap());
            }
        }
        if all.len() == before {
            return all;
        }
    }
}

/// Adjacency straight from the definition: `{X, Y}` is an edge when some element of the lattice
/// with top has exactly `X` and `Y` as the atoms below it.
fn definitional_edges(members: &[SignVector], n: usize) -> BTreeSet<(SignVector, SignVector)> {
    let mut edges = BTreeSet::new();
    let mut below_sets: Vec<Vec<SignVector>> = brute_closure(members, n)
        .iter()
        .map(|z| members.iter().filter(|x| x.leq(z).unwrap()).copied().collect())
        .collect();
    below_sets.push(members.to_vec());
    for below in below_sets {
        if let [x, y] = below[..] {
            edges.insert((x.min(y), x.max(y)));
        }
    }
    edges
}

fn is_cycle(vertices: usize, edges: &BTreeSet<(SignVector, SignVector)>) -> bool {
    let mut adj: BTreeMap<SignVector, Vec<SignVector>> = BTreeMap::new();
    for &(a, b) in edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    if adj.len() != vertices || edges.len() != vertices || adj.values().any(|ns| ns.len() != 2) {
        return false;
    }
    let start = *adj.keys().next().unwrap();
    let (mut prev, mut cur, mut steps) = (start, adj[&start][0], 1);
    while cur != start {
        let next = if adj[&cur][0] == prev { adj[&cur][1] } else { adj[&cur][0] };
        prev = cur;
        cur = next;
        steps += 1;
    }
    steps == vertices
}

fn criterion_7() -> Outcome {
    for n in 2..=8 {
        let sys = u2n(n).unwrap();
        if sys.len() != 2 * n {
            return Err(format!("u2n({n}) has {} cocircuits", sys.len()));
        }
        let oracle = definitional_edges(sys.members(), n);
        if !is_cycle(2 * n, &oracle) {
            return Err(format!("u2n({n}): definitional graph is not a {}-cycle", 2 * n));
        }
        let g = cocircuit_graph(&FaceLattice::build(&sys, &Budget::default()).unwrap());
        let built: BTreeSet<(SignVector, SignVector)> =
            g.edges().map(|(a, b)| (g.vertices()[a], g.vertices()[b])).collect();
        if built != oracle {
            return Err(format!("u2n({n}): library graph differs from the definition"));
        }
    }
    let sweep = ["+0+", "0++", "-+0", "-0-", "0--", "+-0"];
    let u23 = u2n(3).unwrap();
    let g = cocircuit_graph(&FaceLattice::build(&u23, &Budget::default()).unwrap());
    for k in 0..6 {
        let a = g.index_of(&sweep[k].parse().unwrap()).unwrap();
        let b = g.index_of(&sweep[(k + 1) % 6].parse().unwrap()).unwrap();
        if !g.has_edge(a, b) {
            return Err(format!("U(2,3): {} and {} are not adjacent", sweep[k], sweep[(k + 1) % 6]));
        }
    }
    if g.edge_count() != 6 {
        return Err("U(2,3) graph has extra edges".into());
    }
    Ok("u2n(2..8) are 2n-cycles; U(2,3) follows the angular order".into())
}

const NAIVE_GOLDEN: [u64; 13] = [216, 660, 1560, 3150, 5712, 9576, 15120, 22770, 33000, 46332, 63336, 84630, 110880];
const GRAPH_GOLDEN: [u64; 13] = [165, 335, 592, 954, 1439, 2065, 2850, 3812, 4969, 6339, 7940, 9790, 11907];

fn criterion_8() -> Outcome {
    let mut ratios = Vec::new();
    for (k, n) in (4..=16).enumerate() {
        let r = cost_comparison(&u2n(n).unwrap(), &Budget::default()).map_err(|e| e.to_string())?;
        if (r.cost_naive, r.cost_graph) != (NAIVE_GOLDEN[k], GRAPH_GOLDEN[k]) {
            return Err(format!(
                "u2n({n}) counters {} / {} differ from the archived values",
                r.cost_naive, r.cost_graph
            ));
        }
        ratios.push(r.ratio());
    }
    if ratios.windows(2).any(|w| w[1] < w[0]) {
        return Err(format!("ratios not monotone: {ratios:?}"));
    }
    let last = *ratios.last().unwrap();
    if last <= 3.0 {
        return Err(format!("ratio at n = 16 is {last:.3}"));
    }
    Ok(format!("ratio rises from {:.3} (n = 4) to {last:.3} (n = 16)", ratios[0]))
}

fn criterion_9() -> Outcome {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("acceptance");
    std::fs::create_dir_all(&dir).unwrap();
    let u23 = dir.join("u23.txt");
    std::fs::write(&u23, u2n(3).unwrap().to_text()).unwrap();
    let negative = dir.join("negative.txt");
    std::fs::write(&negative, "0++\n0--\n+0+\n-0-\n").unwrap();
    let u23 = u23.to_str().unwrap();
    let negative = negative.to_str().unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec!["check", u23],
        vec!["check", "--format", "json", negative],
        vec!["graph", u23, "--format", "dot"],
        vec!["graph", "--gen", "cyclic:3:6", "--kind", "tope", "--format", "json"],
        vec!["verify-theorem", "--gen", "cyclic:4:7", "--format", "json", "--hulls", "--samples", "200", "--seed", "5"],
        vec!["verify-theorem", negative],
        vec!["bench", "u2n", "4..10", "--format", "json"],
        vec!["bench", "cyclic", "3", "4..6"],
        vec!["gen", "random", "6", "5", "--seed", "11"],
        vec!["gen", "mutate", "flip-entry", u23, "--seed", "2"],
        vec!["contract", "--gen", "cyclic:3:5", "--elements", "e1"],
        vec!["closure", u23, "--format", "dot"],
        vec!["hull", u23, "--vertices", "0++,+-0", "--format", "json"],
    ];
    for args in &commands {
        let mut outputs = Vec::new();
        for jobs in [None, None, Some("1"), Some("2"), Some("4")] {
            let mut cmd = Command::new(env!("CARGO_BIN_EXE_cocircuit"));
            cmd.args(args);
            if let Some(j) = jobs {
                cmd.args(["--jobs", j]);
            }
            let out = cmd.output().map_err(|e| e.to_string())?;
            outputs.push((out.status.code(), out.stdout));
        }
        if outputs.windows(2).any(|w| w[0] != w[1]) {
            return Err(format!("`{}` is not reproducible", args.join(" ")));
        }
    }
    Ok(format!("{} commands byte-identical across reruns and --jobs 1, 2, 4", commands.len()))
}

#[test]
fn acceptance() {
    let positive = positive_corpus();
    let fuzz = fuzz_corpus(&positive);
    let criteria: Vec<Criterion> = vec![
        ("1 axioms agree with crabbed paths", Box::new(|| criterion_1(&positive, &fuzz))),
        ("2 hull connectivity", Box::new(|| criterion_2(&positive))),
        ("3 neighbor counts in uniform hulls", Box::new(|| criterion_3(&positive))),
        ("4 crabbed tope paths", Box::new(|| criterion_4(&positive))),
        ("5 tope subgraph connectivity", Box::new(|| criterion_5(&positive))),
        ("6 contraction rank identity", Box::new(|| criterion_6(&positive))),
        ("7 structural goldens", Box::new(criterion_7)),
        ("8 cost comparison", Box::new(criterion_8)),
        ("9 determinism", Box::new(criterion_9)),
    ];
    let mut failed = Vec::new();
    let mut err = std::io::stderr();
    for (name, run) in &criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match &outcome {
            Ok(detail) => writeln!(err, "PASS criterion {name}: {detail} [{secs:.2}s]").unwrap(),
            Err(detail) => {
                writeln!(err, "FAIL criterion {name}: {detail} [{secs:.2}s]").unwrap();
                failed.push(*name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
