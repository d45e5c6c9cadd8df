//! Degrees of generators inside crabbed hulls of uniform oriented matroids.
//!
//! With `U = X1 ∘ … ∘ Xk`, a generator `Xi` has one hull neighbor for every element `f` of
//! `Xi0 \ U0` and every sign the generators give `f`. When no such `f` receives both signs this is
//! `h(U) - 1`; otherwise the degree is larger.

use cocircuit::generators::{cyclic, u2n};
use cocircuit::graphs::{cocircuit_graph, crabbed_hull};
use cocircuit::verify::{enumerate_hulls, uniform_neighbor_check, Policy};
use cocircuit::{Budget, FaceLattice, Sign, SignSystem, Violation};

fn corpus() -> Vec<SignSystem> {
    let mut out: Vec<SignSystem> = (2..=8).map(|n| u2n(n).unwrap()).collect();
    for r in 2..=4 {
        for n in r..=6 {
            out.push(cyclic(r, n).unwrap());
        }
    }
    out
}

#[test]
fn hull_degree_counts_allowed_signs() {
    let policy = Policy { exhaustive_cap: 16, samples: 300, seed: 1 };
    for sys in corpus() {
        let lattice = FaceLattice::build(&sys, &Budget::default()).unwrap();
        let graph = cocircuit_graph(&lattice);
        let members = graph.vertices();
        for t in enumerate_hulls(members, &policy) {
            let hull = crabbed_hull(&graph, &t.signature);
            let target = lattice.height(&t.composition).unwrap() - 1;
            let gens: Vec<_> = t.generators.iter().map(|&i| members[i]).collect();
            for x in &gens {
                let mut expected = 0;
                let mut clash = false;
                for f in x.zero_support().difference(t.composition.zero_support()).iter() {
                    let signs: Vec<Sign> = gens.iter().map(|g| g.get(f)).filter(|s| *s != Sign::Zero).collect();
                    let plus = signs.contains(&Sign::Plus);
                    let minus = signs.contains(&Sign::Minus);
                    expected += plus as usize + minus as usize;
                    clash |= plus && minus;
                }
                let degree = hull.degree(hull.index_of(x).unwrap());
                assert_eq!(degree, expected, "{x} in hull of {gens:?}");
                if !clash {
                    assert_eq!(degree, target, "{x} in hull of {gens:?}");
                }
            }
        }
    }
}

#[test]
fn pairs_meet_the_bound_exactly() {
    let pairs = Policy { exhaustive_cap: 0, samples: 0, seed: 0 };
    for sys in corpus() {
        assert!(uniform_neighbor_check(&sys, &pairs, &Budget::default()).unwrap().is_pass());
    }
}

#[test]
fn smallest_exception() {
    let sys = SignSystem::from_strs(&["+0", "-0", "0+", "0-"]).unwrap();
    let verdict = uniform_neighbor_check(&sys, &Policy::default(), &Budget::default()).unwrap();
    let Some(Violation::NeighborCount { generators, vertex, degree, target }) = verdict.violation() else {
        panic!("expected an exception, got {verdict}");
    };
    let gens: Vec<String> = generators.iter().map(|g| g.to_string()).collect();
    assert_eq!(gens, ["+0", "0+", "0-"]);
    assert_eq!((vertex.to_string(), *degree, *target), ("+0".to_string(), 2, 1));
}
