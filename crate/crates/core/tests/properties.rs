use std::collections::BTreeSet;

use cocircuit::axioms::{check_all, check_c0_c2, check_c3};
use cocircuit::generators::{cyclic, from_matrix, mutate, random_c0c2, u2n, Mutation, VectorConfiguration};
use cocircuit::graphs::{cocircuit_graph, crabbed_hull, crabbed_path_exists, tope_graph};
use cocircuit::lattice::{closure, contract, Budget, FaceLattice};
use cocircuit::verify::{check_condition_iii, enumerate_hulls, Policy};
use cocircuit::{ElementSet, GroundSet, HullSignature, Sign, SignSystem, SignVector};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn vector(n: usize) -> impl Strategy<Value = SignVector> {
    proptest::collection::vec(prop_oneof![Just(Sign::Plus), Just(Sign::Zero), Just(Sign::Minus)], n)
        .prop_map(|signs| SignVector::from_signs(&signs).unwrap())
}

fn vectors(n: usize, k: usize) -> impl Strategy<Value = Vec<SignVector>> {
    proptest::collection::vec(vector(n), k)
}

/// Candidate systems: oriented matroids, their mutants, and random (C0)–(C2) systems.
fn candidate() -> impl Strategy<Value = SignSystem> {
    prop_oneof![
        (2usize..4, 0usize..3, any::<u64>()).prop_map(|(r, extra, seed)| {
            let sys = cyclic(r, r + extra).unwrap();
            match seed % 4 {
                0 => sys,
                1 => mutate(&sys, Mutation::DropPair, seed).unwrap(),
                2 => mutate(&sys, Mutation::FlipEntry, seed).unwrap(),
                _ => mutate(&sys, Mutation::AddRandom, seed).unwrap(),
            }
        }),
        (2usize..6, any::<u64>())
            .prop_map(|(n, seed)| u2n(n).map(|s| mutate(&s, Mutation::DropPair, seed).unwrap()).unwrap()),
        // Supports of distinct pairs form an antichain; n >= 4 leaves room for 4 of them.
        (4usize..7, 1usize..5, any::<u64>()).prop_map(|(n, pairs, seed)| random_c0c2(n, pairs, seed).unwrap()),
    ]
}

fn shuffled(sys: &SignSystem, seed: u64) -> Vec<SignVector> {
    let mut members = sys.members().to_vec();
    members.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    members
}

proptest! {
    #[test]
    fn composition_support_is_union(xy in vectors(7, 2)) {
        let c = xy[0].compose(&xy[1]).unwrap();
        prop_assert_eq!(c.support(), xy[0].support().union(xy[1].support()));
    }

    #[test]
    fn composition_is_an_idempotent_monoid(xyz in vectors(6, 3)) {
        let (x, y, z) = xy_z(&xyz);
        let zero = SignVector::zero(6);
        prop_assert_eq!(x.compose(&y).unwrap().compose(&z).unwrap(), x.compose(&y.compose(&z).unwrap()).unwrap());
        prop_assert_eq!(x.compose(&x).unwrap(), x);
        prop_assert_eq!(x.compose(&zero).unwrap(), x);
        prop_assert_eq!(zero.compose(&x).unwrap(), x);
    }

    #[test]
    fn conformal_order_is_a_partial_order(xyz in vectors(5, 3)) {
        let (x, y, z) = xy_z(&xyz);
        prop_assert!(x.leq(&x).unwrap());
        prop_assert!(SignVector::zero(5).leq(&x).unwrap());
        if x.leq(&y).unwrap() && y.leq(&x).unwrap() {
            prop_assert_eq!(x, y);
        }
        if x.leq(&y).unwrap() && y.leq(&z).unwrap() {
            prop_assert!(x.leq(&z).unwrap());
        }
        // leq(Y, X) implies X ∘ Y = X.
        if y.leq(&x).unwrap() {
            prop_assert_eq!(x.compose(&y).unwrap(), x);
        }
    }

    #[test]
    fn negation(xy in vectors(8, 2)) {
        let (x, y) = (xy[0], xy[1]);
        prop_assert_eq!(x.negate().negate(), x);
        prop_assert_eq!(x.negate().separator(&y.negate()).unwrap(), x.separator(&y).unwrap());
    }

    #[test]
    fn serialization_round_trips(vs in proptest::collection::vec(vector(6), 0..12)) {
        let sys = SignSystem::new(GroundSet::with_size(6).unwrap(), vs).unwrap();
        let text = sys.to_text();
        let back = SignSystem::parse(&text).unwrap();
        prop_assert_eq!(back.members(), sys.members());
        prop_assert_eq!(back.to_text(), text);
    }

    #[test]
    fn canonical_order_is_total(xy in vectors(6, 2)) {
        let (x, y) = (xy[0], xy[1]);
        prop_assert_eq!(x.cmp(&y) == std::cmp::Ordering::Equal, x == y);
        prop_assert_eq!(x.cmp(&y), y.cmp(&x).reverse());
    }

    #[test]
    fn axioms_ignore_member_order_and_negation(sys in candidate(), seed in any::<u64>()) {
        let reordered = SignSystem::new(sys.ground().clone(), shuffled(&sys, seed)).unwrap();
        prop_assert_eq!(check_c3(&reordered), check_c3(&sys));
        prop_assert_eq!(check_c3(&sys.negated()).is_pass(), check_c3(&sys).is_pass());
    }

    #[test]
    fn closure_is_idempotent_and_bounded(sys in candidate()) {
        let b = Budget::default();
        let once = closure(&sys, &b).unwrap();
        prop_assert_eq!(closure(&once, &b).unwrap(), once.clone());
        prop_assert!((once.len() as u64) <= 3u64.pow(sys.ground_size() as u32));
    }

    #[test]
    fn zero_support_of_a_composition_is_an_intersection(xs in proptest::collection::vec(vector(6), 1..6)) {
        let c = SignVector::compose_seq(6, xs.iter()).unwrap();
        let common = xs.iter().fold(ElementSet::full(6), |acc, x| acc.intersection(x.zero_support()));
        prop_assert_eq!(c.zero_support(), common);
    }

    #[test]
    fn oriented_matroid_lattices_are_graded_with_atoms_as_base(sys in candidate(), mask in 0u64..64) {
        prop_assume!(check_all(&sys).is_pass());
        let lattice = FaceLattice::build(&sys, &Budget::default()).unwrap();
        prop_assert!(lattice.is_graded());
        prop_assert_eq!(lattice.atoms(), sys.clone());
        let elements = ElementSet::from_bits(mask & ((1 << sys.ground_size()) - 1));
        let minor = contract(&sys, elements).unwrap();
        prop_assert!(check_all(&minor.system).is_pass());
    }

    #[test]
    fn graph_invariants(sys in candidate()) {
        prop_assume!(check_c0_c2(&sys).is_pass());
        let lattice = FaceLattice::build(&sys, &Budget::default()).unwrap();
        let g = cocircuit_graph(&lattice);
        for (a, b) in g.edges() {
            let (x, y) = (g.vertices()[a], g.vertices()[b]);
            if x == y.negate() {
                // Only two atoms: they are joined through the artificial top.
                prop_assert_eq!(g.vertex_count(), 2);
            } else {
                prop_assert!(x.separator(&y).unwrap().is_empty());
            }
        }
        // Negation is an isomorphism X -> -X.
        let ng = cocircuit_graph(&FaceLattice::build(&sys.negated(), &Budget::default()).unwrap());
        let nt = tope_graph(&FaceLattice::build(&sys.negated(), &Budget::default()).unwrap());
        let t = tope_graph(&lattice);
        for (graph, negated) in [(&g, &ng), (&t, &nt)] {
            prop_assert_eq!(graph.edge_count(), negated.edge_count());
            for (a, b) in graph.edges() {
                let na = negated.index_of(&graph.vertices()[a].negate()).unwrap();
                let nb = negated.index_of(&graph.vertices()[b].negate()).unwrap();
                prop_assert!(negated.has_edge(na, nb));
            }
        }
        // Crabbed paths are symmetric and implied by edges.
        let vs = g.vertices();
        for i in 0..vs.len().min(8) {
            for j in 0..vs.len().min(8) {
                let forward = crabbed_path_exists(&g, &vs[i], &vs[j]).unwrap();
                prop_assert_eq!(forward, crabbed_path_exists(&g, &vs[j], &vs[i]).unwrap());
                if g.has_edge(i, j) {
                    prop_assert!(forward);
                }
            }
        }
    }

    #[test]
    fn hull_membership_is_monotone(sys in candidate(), picks in proptest::collection::vec(any::<prop::sample::Index>(), 1..5)) {
        prop_assume!(check_c0_c2(&sys).is_pass() && !sys.is_empty());
        let g = cocircuit_graph(&FaceLattice::build(&sys, &Budget::default()).unwrap());
        let chosen: Vec<SignVector> = picks.iter().map(|i| *i.get(sys.members())).collect();
        let mut previous: BTreeSet<SignVector> = BTreeSet::new();
        for k in 1..=chosen.len() {
            let sig = HullSignature::from_vectors(&chosen[..k]).unwrap();
            let now: BTreeSet<SignVector> = crabbed_hull(&g, &sig).vertices().iter().copied().collect();
            prop_assert!(previous.is_subset(&now));
            previous = now;
        }
    }

    #[test]
    fn condition_iii_ignores_order_and_negation(sys in candidate(), seed in any::<u64>()) {
        prop_assume!(check_c0_c2(&sys).is_pass());
        let b = Budget::default();
        let base = check_condition_iii(&sys, &b).unwrap().verdict.is_pass();
        let reordered = SignSystem::new(sys.ground().clone(), shuffled(&sys, seed)).unwrap();
        prop_assert_eq!(check_condition_iii(&reordered, &b).unwrap().verdict.is_pass(), base);
        prop_assert_eq!(check_condition_iii(&sys.negated(), &b).unwrap().verdict.is_pass(), base);
        prop_assert_eq!(check_all(&sys).is_pass(), base);
    }

    #[test]
    fn hull_targets_ignore_generator_order(sys in candidate(), seed in any::<u64>()) {
        prop_assume!(check_c0_c2(&sys).is_pass());
        let lattice = FaceLattice::build(&sys, &Budget::default()).unwrap();
        let members = sys.members();
        let policy = Policy { exhaustive_cap: 10, samples: 20, seed };
        for t in enumerate_hulls(members, &policy) {
            let mut order: Vec<SignVector> = t.generators.iter().map(|&i| members[i]).collect();
            order.reverse();
            let reversed = SignVector::compose_seq(sys.ground_size(), order.iter()).unwrap();
            prop_assert_eq!(reversed.zero_support(), t.composition.zero_support());
            if lattice.is_graded() {
                prop_assert_eq!(lattice.height(&reversed), lattice.height(&t.composition));
            }
        }
    }

    #[test]
    fn realizable_systems_are_oriented_matroids(rows in proptest::collection::vec(proptest::collection::vec(-3i64..4, 5), 2..4), scale in 1i64..5) {
        let Ok(config) = VectorConfiguration::new(rows.clone()) else { return Ok(()); };
        let sys = from_matrix(&config).unwrap();
        prop_assert!(check_all(&sys).is_pass());
        // Positive column scaling does not change the system.
        let scaled: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().enumerate().map(|(j, x)| if j == 0 { x * scale } else { *x }).collect()).collect();
        prop_assert_eq!(from_matrix(&VectorConfiguration::new(scaled).unwrap()).unwrap(), sys);
    }
}

fn xy_z(v: &[SignVector]) -> (SignVector, SignVector, SignVector) {
    (v[0], v[1], v[2])
}

#[test]
fn coordinate_arrangements_reach_every_sign_vector() {
    // Equality in |covectors| <= 3^n is attained by the coordinate hyperplanes.
    let b = Budget::default();
    let one = SignSystem::from_strs(&["+", "-"]).unwrap();
    assert_eq!(closure(&one, &b).unwrap().len(), 3);
    let two = SignSystem::from_strs(&["+0", "-0", "0+", "0-"]).unwrap();
    assert!(check_all(&two).is_pass());
    assert_eq!(closure(&two, &b).unwrap().len(), 9);
}
