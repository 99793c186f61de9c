use proptest::prelude::*;

use kite_core::algebra::{
    admissibility_count_variety, check_distributive, check_joint_cancellative, classify_wm_object, equivalence_2_3_check, find_witness_kite,
    maltsev_solve, maltsev_table, relation_properties, standard_lattices, zn, zn_magma, BinaryRelation, OpAlgebra,
    Operation, Variety,
};
use kite_core::DEFAULT_CAP;

/// Every symmetric Latin square of size `n`, by filling the upper triangle.
fn symmetric_latin_squares(n: usize) -> Vec<Vec<usize>> {
    fn fill(n: usize, cell: usize, t: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let (i, j) = (cell / n, cell % n);
        if i == n {
            out.push(t.clone());
            return;
        }
        if j < i {
            return fill(n, cell + 1, t, out);
        }
        for v in 0..n {
            let clash = (0..n).any(|k| (k < j && t[i * n + k] == v) || (k < i && t[k * n + j] == v));
            if clash {
                continue;
            }
            t[i * n + j] = v;
            t[j * n + i] = v;
            fill(n, cell + 1, t, out);
        }
        t[i * n + j] = usize::MAX;
        t[j * n + i] = usize::MAX;
    }
    let mut out = Vec::new();
    fill(n, 0, &mut vec![usize::MAX; n * n], &mut out);
    out
}

fn cmag(n: usize, table: Vec<usize>) -> OpAlgebra {
    OpAlgebra::new(n, Variety::Cmag, vec![Operation::new("*", 2, table)]).unwrap()
}

#[test]
fn cancellative_cmags_always_solve() {
    let mut seen = Vec::new();
    for n in 1..=4 {
        let squares = symmetric_latin_squares(n);
        seen.push(squares.len());
        for t in squares {
            let a = cmag(n, t);
            assert!(equivalence_2_3_check(&a).unwrap().cancellation);
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        let p = maltsev_solve(&a, x, y, z).unwrap();
                        let m = a.mul().unwrap();
                        assert_eq!(m.eval2(n, p, y), m.eval2(n, x, z));
                    }
                }
            }
        }
    }
    assert_eq!(seen, [1, 2, 6, 96]);
}

#[test]
fn cancellation_matches_unique_solutions_up_to_size_three() {
    for n in 1..=3usize {
        let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        for code in 0..n.pow(cells.len() as u32) {
            let mut t = vec![0; n * n];
            for (k, &(i, j)) in cells.iter().enumerate() {
                let v = code / n.pow(k as u32) % n;
                t[i * n + j] = v;
                t[j * n + i] = v;
            }
            let e = equivalence_2_3_check(&cmag(n, t.clone())).unwrap();
            assert!(e.agree(), "{t:?}");
        }
    }
}

#[test]
fn distributive_lattices_are_jointly_cancellative() {
    for (name, l, distributive) in standard_lattices() {
        assert_eq!(check_distributive(&l).unwrap().holds(), distributive, "{name}");
        assert_eq!(check_joint_cancellative(&l).unwrap().holds(), distributive, "{name}");
        assert_eq!(classify_wm_object(&l).unwrap().weakly_maltsev, distributive, "{name}");
    }
}

#[test]
fn cyclic_groups_have_the_subtraction_term() {
    for n in 2..=5 {
        let t = maltsev_table(&zn_magma(n)).unwrap();
        assert!(t.certified());
        assert_eq!(t.p(0, 1, 0), (n - 1) % n);
    }
}

#[test]
fn cyclic_groups_have_no_witness_kite() {
    for n in 1..=3 {
        let s = find_witness_kite(&zn_magma(n), 10_000).unwrap();
        assert!(!s.found() && s.exhausted, "Z_{n}");
    }
}

#[test]
fn meet_semilattice_witness_is_ambiguous() {
    let meet = OpAlgebra::new(2, Variety::Cmag, vec![Operation::binary("^", 2, |x, y| x & y)]).unwrap();
    let s = find_witness_kite(&meet, 10_000).unwrap();
    let k = s.witness.expect("a witness kite");
    assert!(k.validate().is_ok());
    assert!(!admissibility_count_variety(&k, DEFAULT_CAP).unwrap().count.at_most_one());
}

fn relation(n: usize) -> impl Strategy<Value = BinaryRelation> {
    prop::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
        let pairs: Vec<(usize, usize)> =
            (0..n * n).filter(|&i| bits[i] || i / n == i % n).map(|i| (i / n, i % n)).collect();
        BinaryRelation::from_pairs(n, &pairs).unwrap()
    })
}

proptest! {
    #[test]
    fn reflexive_difunctional_is_an_equivalence(r in (1..=4usize).prop_flat_map(relation)) {
        let p = relation_properties(&r);
        prop_assert!(p.reflexive.holds());
        if p.difunctional.holds() {
            prop_assert!(p.symmetric.holds() && p.transitive.holds());
        }
    }

    #[test]
    fn closure_is_compatible_and_idempotent(r in (1..=4usize).prop_flat_map(relation)) {
        let g = zn(r.size());
        let c = r.closure(&g);
        prop_assert!(c.is_compatible(&g));
        prop_assert_eq!(c.closure(&g), c.clone());
        prop_assert!(r.pairs().iter().all(|&(a, b)| c.contains(a, b)));
    }
}
