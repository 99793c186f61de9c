use proptest::prelude::*;

use kite_core::algebra::{group_from_monoid, monoids};
use kite_core::internal::{
    kite_from_cat, kite_from_span, kpc, kpc_swapped, pregroupoid_structures, KernelPairConstruction,
    MultiplicativeGraph, Span,
};
use kite_core::kite_condition::{admissibility_count, wm_witness_kite};
use kite_core::{FinMap, DEFAULT_CAP};

fn span() -> impl Strategy<Value = Span> {
    (1..=4usize, 1..=3usize, 1..=3usize).prop_flat_map(|(n, k0, k1)| {
        (prop::collection::vec(0..k0, n), prop::collection::vec(0..k1, n)).prop_map(move |(d, c)| {
            Span::new(FinMap::new(k0, d).unwrap(), FinMap::new(k1, c).unwrap()).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn kpc_labels_match_brute_force(sp in span()) {
        let k = kpc(&sp);
        prop_assert_eq!(&k.labels, &KernelPairConstruction::brute_force_labels(&sp, false));
        prop_assert!(k.check_formulas().iter().all(|d| d.holds()));
        let ks = kpc_swapped(&sp);
        prop_assert_eq!(&ks.labels, &KernelPairConstruction::brute_force_labels(&sp, true));
        prop_assert!(ks.check_formulas().iter().all(|d| d.holds()));
    }

    #[test]
    fn span_kite_multiplications_are_pregroupoids(sp in span()) {
        let k = kite_from_span(&sp).unwrap();
        prop_assert!(k.is_valid());
        let m = k.multiplications(DEFAULT_CAP).unwrap();
        let p = pregroupoid_structures(&sp, DEFAULT_CAP);
        prop_assert_eq!(m.count, p.count);
        prop_assert_eq!(m.maps, p.maps);
    }

    #[test]
    fn injective_push_never_loses_solutions(n in 2..=3usize, extra in 0..=2usize, seed in any::<u64>()) {
        let k = wm_witness_kite(n).unwrap();
        // an injection n -> n + extra, shifted by the seed
        let shift = (seed as usize) % (n + extra);
        let h = FinMap::new(n + extra, (0..n).map(|x| (x + shift) % (n + extra)).collect()).unwrap();
        let before = admissibility_count(&k, DEFAULT_CAP).unwrap().count;
        let after = admissibility_count(&k.pushed(&h).unwrap(), DEFAULT_CAP).unwrap().count;
        prop_assert!(after.lower_bound() >= before.lower_bound());
    }
}

/// Reflexive relations on `n` elements, as spans `R -> n`, `R -> n`.
fn reflexive_relations(n: usize) -> impl Iterator<Item = Span> {
    let off: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|(a, b)| a != b).collect();
    (0..1u32 << off.len()).map(move |mask| {
        let mut pairs: Vec<(usize, usize)> = (0..n).map(|x| (x, x)).collect();
        pairs.extend(off.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p));
        pairs.sort_unstable();
        let d = FinMap::new(n, pairs.iter().map(|p| p.0).collect()).unwrap();
        let c = FinMap::new(n, pairs.iter().map(|p| p.1).collect()).unwrap();
        Span::new(d, c).unwrap()
    })
}

#[test]
fn relations_carry_at_most_one_pregroupoid() {
    for n in 1..=3 {
        for sp in reflexive_relations(n) {
            assert!(sp.is_relation());
            let sols = kite_from_span(&sp).unwrap().multiplications(DEFAULT_CAP).unwrap();
            assert!(sols.count.at_most_one(), "{sp:?}: {}", sols.count);
        }
    }
}

#[test]
fn equivalence_relations_carry_exactly_one() {
    // the equivalence relation {0,1}{2} on 3 points
    let pairs = [(0, 0), (0, 1), (1, 0), (1, 1), (2, 2)];
    let d = FinMap::new(3, pairs.iter().map(|p| p.0).collect()).unwrap();
    let c = FinMap::new(3, pairs.iter().map(|p| p.1).collect()).unwrap();
    let sols = pregroupoid_structures(&Span::new(d, c).unwrap(), DEFAULT_CAP);
    assert!(sols.count.is_unique());
}

#[test]
fn group_kites_are_solvable() {
    let mut groups = 0;
    for n in 1..=4 {
        for t in monoids(n) {
            if group_from_monoid(n, &t).is_none() {
                continue;
            }
            groups += 1;
            let mg = MultiplicativeGraph::from_monoid(n, &t, 0).unwrap();
            assert!(mg.groupoid_square().holds());
            let k = kite_from_cat(&mg).unwrap();
            let sols = k.multiplications(DEFAULT_CAP).unwrap();
            assert!(!sols.count.is_zero(), "{t:?}");
            assert!(k.check_multiplication(&sols.maps[0]).unwrap().iter().all(|d| d.holds()));
            // in finite sets the solution is unique only for the trivial group
            assert_eq!(sols.count.is_unique(), n == 1, "{t:?}: {}", sols.count);
        }
    }
    // labelled tables with unit 0: Z_4 appears three times
    assert_eq!(groups, 1 + 1 + 1 + 3 + 1);
}
