mod common;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symlift_core::balanced::{
    coarsest_balanced, coarsest_balanced_refinement, enumerate_balanced, is_balanced_combinatorial,
    is_balanced_matrix,
};
use symlift_core::quotient::quotient;
use symlift_core::{DiGraph, Partition};

#[test]
fn oracle_enumerates_bell_numbers() {
    let bell = [1usize, 1, 2, 5, 15, 52, 203, 877];
    for n in 1..=7 {
        assert_eq!(all_label_vectors(n).len(), bell[n]);
    }
}

#[test]
fn both_balance_tests_agree_with_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let n = rng.gen_range(1..=6);
        let g = random_graph(&mut rng, n, 2);
        for labels in all_label_vectors(n) {
            let p = Partition::from_labels(&labels).unwrap();
            let expect = balanced_oracle(&g, &labels);
            assert_eq!(is_balanced_combinatorial(&g, &p).unwrap(), expect);
            assert_eq!(is_balanced_matrix(&g, &p).unwrap(), expect);
        }
    }
}

#[test]
fn enumeration_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..30 {
        let n = rng.gen_range(1..=7);
        // sparse graphs have more balanced relations
        let g = random_graph(&mut rng, n, 1);
        let expect: Vec<Partition> = all_label_vectors(n)
            .into_iter()
            .filter(|l| balanced_oracle(&g, l))
            .map(|l| Partition::from_labels(&l).unwrap())
            .collect();
        assert_eq!(enumerate_balanced(&g, 7).unwrap(), expect);
    }
}

#[test]
fn coarsest_refinement_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..60 {
        let n = rng.gen_range(1..=7);
        let g = random_graph(&mut rng, n, 1);
        let seeds = all_label_vectors(n);
        for _ in 0..5 {
            let seed = &seeds[rng.gen_range(0..seeds.len())];
            let candidates: Vec<Vec<usize>> =
                seeds.iter().filter(|l| refines(l, seed) && balanced_oracle(&g, l)).cloned().collect();
            // the coarsest candidate is refined by every other one
            let top = candidates
                .iter()
                .find(|c| candidates.iter().all(|d| refines(d, c)))
                .expect("balanced refinements form a lattice");
            let got = coarsest_balanced_refinement(&g, &Partition::from_labels(seed).unwrap()).unwrap();
            assert_eq!(got, Partition::from_labels(top).unwrap());
        }
    }
}

#[test]
fn linear_flow_invariance_iff_balanced() {
    // F = A x; one Euler step from a generic point of the polydiagonal stays on
    // it exactly when the relation is balanced
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..25 {
        let n = rng.gen_range(1..=7);
        let g = random_graph(&mut rng, n, 3);
        for labels in all_label_vectors(n) {
            let x: Vec<f64> = labels.iter().map(|&c| 100f64.powi(c as i32)).collect();
            let step: Vec<f64> = (0..n).map(|i| x[i] + (0..n).map(|j| f64::from(g.get(i, j)) * x[j]).sum::<f64>()).collect();
            let invariant = (0..n).all(|u| (0..n).all(|v| labels[u] != labels[v] || step[u] == step[v]));
            assert_eq!(invariant, balanced_oracle(&g, &labels), "{:?} {:?}", g.rows(), labels);
        }
    }
}

fn arb_graph() -> impl Strategy<Value = DiGraph> {
    (1usize..=6).prop_flat_map(|n| {
        prop::collection::vec(0u32..=3, n * n).prop_map(move |adj| DiGraph::from_matrix(n, adj).unwrap())
    })
}

proptest! {
    #[test]
    fn coarsest_is_balanced_and_refines_valency(g in arb_graph()) {
        let c = coarsest_balanced(&g);
        prop_assert!(is_balanced_combinatorial(&g, &c).unwrap());
        prop_assert!(c.is_refinement_of(&g.valency_partition()).unwrap());
    }

    #[test]
    fn quotient_preserves_valency(g in arb_graph()) {
        let c = coarsest_balanced(&g);
        let q = quotient(&g, &c).unwrap();
        for (i, r) in c.representatives().into_iter().enumerate() {
            prop_assert_eq!(q.quotient.valency(i), g.valency(r));
        }
        prop_assert_eq!(q.class_sizes.iter().sum::<usize>(), g.n());
    }

    #[test]
    fn singletons_always_balanced(g in arb_graph()) {
        let p = Partition::singletons(g.n());
        prop_assert!(is_balanced_matrix(&g, &p).unwrap());
        prop_assert_eq!(quotient(&g, &p).unwrap().quotient, g);
    }
}
