//! Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

use kite_core::algebra::{
    check_homomorphism, check_unary_monoid_law, check_unary_monoid_unique, classify_wm_object, equiv23_sweep,
    group_from_monoid, m3, maltsev_table, monoids, n5, reflexive_relations, relation_properties, two_by_two,
    unary_monoid_from_group, zn, zn_magma, admissibility_count_variety, check_naturality_of_p, chain, OpAlgebra,
    Operation, Variety, VarietyKite,
};
use kite_core::finmap::{ismember, ismember_pullback};
use kite_core::internal::{kite_from_cat, kite_from_umg, kpc, KernelPairConstruction, MultiplicativeGraph, Span};
use kite_core::kite_condition::{delta, group_kite, m_from_theta, mu_from_pregroupoid, solve_m, wm_object_check_finset};
use kite_core::limits::{check_local_product_intrinsic, local_product, pullback, LocalProductDiagram, SplitCospan};
use kite_core::{compose, FinMap, DEFAULT_CAP};

struct Outcome {
    pass: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { pass: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { pass: false, detail: detail.into() }
}

type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "local product round trip on 200 random split cospans", Duration::from_secs(10), c1),
        (2, "kernel pair construction formulas on 100 random spans", Duration::from_secs(5), c2),
        (3, "finite sets of size 0..=6 as weakly Mal'tsev objects", Duration::from_secs(5), c3),
        (4, "kite2/kite3 uniqueness against associativity/groupoid on monoids of size <= 3", Duration::from_secs(60), c4),
        (5, "Mal'tsev operation of (Z_n, +), n <= 7, and naturality for m, n <= 5", Duration::from_secs(30), c5),
        (6, "classification of lattices, the meet semilattice and groups", Duration::from_secs(30), c6),
        (7, "properties of compatible reflexive relations", Duration::from_secs(30), c7),
        (8, "theta and delta on the Z_2 and Z_3 group kites", Duration::from_secs(5), c8),
        (9, "cancellation vs unique solvability on all 729 commutative 3-element magmas", Duration::from_secs(10), c9),
        (10, "ismember against the double-loop oracle and the pullback reading", Duration::from_secs(5), c10),
    ];
    let mut failed = 0;
    for (n, name, limit, run) in criteria {
        let start = Instant::now();
        let mut out = run();
        let took = start.elapsed();
        if out.pass && took > limit {
            out = fail(format!("{}; took {took:.2?}, limit {limit:?}", out.detail));
        }
        let tag = if out.pass { "PASS" } else { "FAIL" };
        println!("criterion {n:>2}: {tag} [{took:.2?}] {name}: {}", out.detail);
        failed += usize::from(!out.pass);
    }
    println!("{} of 10 criteria pass", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

/// A random map `n -> m` that is a split epi, with a random section.
fn split_epi(rng: &mut StdRng, n: usize, m: usize) -> (FinMap, FinMap) {
    let mut pool: Vec<usize> = (0..n).collect();
    let mut section = Vec::with_capacity(m);
    for _ in 0..m {
        let i = rng.random_range(0..pool.len());
        section.push(pool.swap_remove(i));
    }
    let mut f: Vec<usize> = (0..n).map(|_| rng.random_range(0..m)).collect();
    for (b, &a) in section.iter().enumerate() {
        f[a] = b;
    }
    (FinMap::new(m, f).unwrap(), FinMap::new(n, section).unwrap())
}

fn random_split_cospan(rng: &mut StdRng) -> SplitCospan {
    let b = rng.random_range(1..=5);
    let a = rng.random_range(b..=5);
    let c = rng.random_range(b..=5);
    let (f, r) = split_epi(rng, a, b);
    let (g, s) = split_epi(rng, c, b);
    SplitCospan::new(f, r, g, s).unwrap()
}

fn c1() -> Outcome {
    let mut rng = StdRng::seed_from_u64(1);
    for i in 0..200 {
        let sc = random_split_cospan(&mut rng);
        let lp = local_product(&sc).unwrap();
        // pairs with f a = g c, by double loop
        let oracle: Vec<(usize, usize)> = (0..sc.a())
            .flat_map(|a| (0..sc.c()).map(move |c| (a, c)))
            .filter(|&(a, c)| sc.f.apply(a) == sc.g.apply(c))
            .collect();
        if lp.labels() != oracle.as_slice() {
            return fail(format!("instance {i}: labels differ from the pullback oracle"));
        }
        let check = check_local_product_intrinsic(&LocalProductDiagram::from(&lp)).unwrap();
        if !check.holds() {
            return fail(format!("instance {i}: lp-check rejects a local product: {:?}", check.details));
        }
        let rec = check.reconstruction.unwrap();
        let again = local_product(&rec.cospan).unwrap();
        if again.labels() != lp.labels() || again.e1 != lp.e1 || again.e2 != lp.e2 || again.p1() != lp.p1() || again.p2() != lp.p2() {
            return fail(format!("instance {i}: reconstructed cospan gives a different local product"));
        }
    }
    pass("200/200 round trips")
}

fn random_span(rng: &mut StdRng) -> Span {
    let n = rng.random_range(1..=5);
    let k0 = rng.random_range(1..=5);
    let k1 = rng.random_range(1..=5);
    let d = FinMap::new(k0, (0..n).map(|_| rng.random_range(0..k0)).collect()).unwrap();
    let c = FinMap::new(k1, (0..n).map(|_| rng.random_range(0..k1)).collect()).unwrap();
    Span::new(d, c).unwrap()
}

/// The nine set formulas evaluated straight from the label tables.
fn formulas_by_hand(k: &KernelPairConstruction) -> Result<(), String> {
    let kd = k.kd.labels();
    let kc = k.kc.labels();
    let t = &k.labels;
    let n = k.span.apex();
    let triples: Vec<(usize, usize, usize)> = (0..n)
        .flat_map(|x| (0..n).flat_map(move |y| (0..n).map(move |z| (x, y, z))))
        .filter(|&(x, y, z)| k.span.d.apply(x) == k.span.d.apply(y) && k.span.c.apply(y) == k.span.c.apply(z))
        .collect();
    if *t != triples {
        return Err("triples differ from D x D x D filtered".into());
    }
    for (i, &(x, y)) in kd.iter().enumerate() {
        if k.d1.apply(i) != x || k.d2.apply(i) != y {
            return Err(format!("d1/d2 at ({x},{y})"));
        }
        if t[k.e1.apply(i)] != (x, y, y) {
            return Err(format!("e1 at ({x},{y})"));
        }
    }
    for (i, &(y, z)) in kc.iter().enumerate() {
        if k.c1.apply(i) != y || k.c2.apply(i) != z {
            return Err(format!("c1/c2 at ({y},{z})"));
        }
        if t[k.e2.apply(i)] != (y, y, z) {
            return Err(format!("e2 at ({y},{z})"));
        }
    }
    for (i, &(x, y, z)) in t.iter().enumerate() {
        if kd[k.p1.apply(i)] != (x, y) || kc[k.p2.apply(i)] != (y, z) {
            return Err(format!("p1/p2 at ({x},{y},{z})"));
        }
    }
    for y in 0..n {
        if kd[k.kd.diagonal.apply(y)] != (y, y) || kc[k.kc.diagonal.apply(y)] != (y, y) {
            return Err(format!("diagonal at {y}"));
        }
    }
    Ok(())
}

fn c2() -> Outcome {
    let mut rng = StdRng::seed_from_u64(2);
    for i in 0..100 {
        let span = random_span(&mut rng);
        let k = kpc(&span);
        if let Some(d) = k.check_formulas().iter().find(|d| !d.holds()) {
            return fail(format!("span {i}: {} fails", d.condition));
        }
        if let Err(e) = formulas_by_hand(&k) {
            return fail(format!("span {i}: {e}"));
        }
    }
    pass("100/100 spans, every formula pointwise")
}

fn c3() -> Outcome {
    let mut notes = Vec::new();
    for n in 0..=6usize {
        let w = wm_object_check_finset(n, DEFAULT_CAP).unwrap();
        if n <= 1 {
            if !w.weakly_maltsev {
                return fail(format!("size {n} reported not weakly Mal'tsev"));
            }
            continue;
        }
        let Some(k) = &w.witness else { return fail(format!("size {n}: no witness kite")) };
        if w.weakly_maltsev {
            return fail(format!("size {n} reported weakly Mal'tsev"));
        }
        // the witness: f, g to a point, alpha = gamma = 1
        let ok_shape = k.alpha.is_identity() && k.gamma.is_identity() && k.f.cod() == 1 && k.g.cod() == 1;
        let lp = local_product(&k.cospan()).unwrap();
        let sols = kite_core::kite_condition::admissibility_count(k, DEFAULT_CAP).unwrap();
        let expected = (n as u128).pow(((n - 1) * (n - 1)) as u32);
        let verified = sols.maps.len() >= 2
            && sols.maps.iter().all(|phi| {
                compose(phi, &lp.e1).unwrap() == k.alpha && compose(phi, &lp.e2).unwrap() == k.gamma
            })
            && sols.maps[0] != sols.maps[1];
        if !ok_shape || !verified || sols.count.lower_bound() != expected {
            return fail(format!("size {n}: witness not verified (count {})", sols.count));
        }
        notes.push(format!("{n}:{}", sols.count));
    }
    pass(format!("sizes 0,1 WM; witness counts {}", notes.join(" ")))
}

fn associative_table(n: usize, t: &[usize]) -> bool {
    (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| t[t[x * n + y] * n + z] == t[x * n + t[y * n + z]])))
}

fn every_element_invertible(n: usize, t: &[usize]) -> bool {
    (0..n).all(|x| (0..n).any(|y| t[x * n + y] == 0 && t[y * n + x] == 0))
}

fn c4() -> Outcome {
    let mut checked = 0;
    let (mut bad2, mut bad3) = (Vec::new(), Vec::new());
    for n in 1..=3 {
        for t in monoids(n) {
            let mg = MultiplicativeGraph::from_monoid(n, &t, 0).unwrap();
            let assoc = associative_table(n, &t);
            let groupoid = every_element_invertible(n, &t);
            if assoc != mg.associativity().holds() || groupoid != mg.groupoid_square().holds() {
                return fail(format!("library checkers disagree with the oracle on {t:?}"));
            }
            let k2 = kite_from_umg(&mg).unwrap().multiplications(DEFAULT_CAP).unwrap();
            let k3 = kite_from_cat(&mg).unwrap().multiplications(DEFAULT_CAP).unwrap();
            checked += 1;
            if k2.count.is_unique() != assoc {
                bad2.push(format!("{t:?} associative={assoc} count {}", k2.count));
            }
            if k3.count.is_unique() != groupoid {
                bad3.push(format!("{t:?} groupoid={groupoid} count {}", k3.count));
            }
        }
    }
    if bad2.is_empty() && bad3.is_empty() {
        return pass(format!("{checked} monoids"));
    }
    // only the forward implications survive in finite sets: points of the
    // local product off the cross e1(A) u e2(C) are unconstrained
    fail(format!(
        "over {checked} monoids, kite2 mismatches {} (first {}), kite3 mismatches {} (first {})",
        bad2.len(),
        bad2.first().map_or("-", String::as_str),
        bad3.len(),
        bad3.first().map_or("-", String::as_str),
    ))
}

fn c5() -> Outcome {
    for n in 1..=7 {
        let a = zn_magma(n);
        let t = match maltsev_table(&a) {
            Ok(t) => t,
            Err(e) => return fail(format!("Z_{n}: {e}")),
        };
        if !t.certified() {
            return fail(format!("Z_{n}: certificate fails"));
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if t.p(x, y, z) != (x + n - y + z) % n {
                        return fail(format!("Z_{n}: p({x},{y},{z}) is not x - y + z"));
                    }
                }
            }
        }
    }
    let mut homs = 0;
    for m in 1..=5usize {
        for n in 1..=5usize {
            let (a, b) = (zn_magma(m), zn_magma(n));
            for code in 0..n.pow(m as u32) {
                let h: Vec<usize> = (0..m).map(|i| (code / n.pow(i as u32)) % n).collect();
                if !check_homomorphism(&a, &b, &h).unwrap().holds() {
                    continue;
                }
                homs += 1;
                match check_naturality_of_p(&a, &b, &h) {
                    Ok(v) if v.holds() => {}
                    other => return fail(format!("Z_{m} -> Z_{n} along {h:?}: {other:?}")),
                }
            }
        }
    }
    pass(format!("tables for n <= 7 certified; naturality along {homs} homomorphisms"))
}

fn c6() -> Outcome {
    for (name, l) in [("2-chain", chain(2)), ("2x2", two_by_two())] {
        if !classify_wm_object(&l).unwrap().weakly_maltsev {
            return fail(format!("{name} not classified WM"));
        }
    }
    for (name, l) in [("M3", m3()), ("N5", n5())] {
        let c = classify_wm_object(&l).unwrap();
        let joint = c.details.iter().find(|d| d.condition.contains("joint cancellation"));
        if c.weakly_maltsev || !joint.is_some_and(|d| !d.holds() && d.witness.is_some()) {
            return fail(format!("{name} not classified non-WM with a joint-cancellation witness"));
        }
    }
    let meet = OpAlgebra::new(2, Variety::Cmag, vec![Operation::binary("^", 2, |x, y| x & y)]).unwrap();
    let c = classify_wm_object(&meet).unwrap();
    if c.weakly_maltsev || c.details[0].witness != Some(serde_json::json!([0, 1, 0])) {
        return fail("({0,1}, meet) lacks the cancellation witness (0, 1, 0)");
    }
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/tests/data/meet_witness_kite.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let k: VarietyKite = serde_json::from_value(v).unwrap();
    if k.d != meet {
        return fail("shipped kite is not over ({0,1}, meet)");
    }
    let count = admissibility_count_variety(&k, DEFAULT_CAP).unwrap().count;
    if count.at_most_one() {
        return fail(format!("shipped kite has {count} admissibility morphisms"));
    }
    let mut groups = 0;
    for n in 1..=4 {
        for t in monoids(n) {
            let Some(g) = group_from_monoid(n, &t) else { continue };
            let u = unary_monoid_from_group(&g).unwrap();
            if !check_unary_monoid_law(&u).unwrap().holds() || !check_unary_monoid_unique(&u).unwrap().holds() {
                return fail(format!("group {t:?} fails the unary-monoid criterion"));
            }
            groups += 1;
        }
    }
    pass(format!("lattices and meet as expected; shipped kite count {count}; {groups} groups"))
}

fn c7() -> Outcome {
    let mut total = 0;
    for n in 1..=4 {
        let rels = match reflexive_relations(&zn(n), 100_000).into_result() {
            Ok(r) => r,
            Err(e) => return fail(format!("Z_{n}: {e}")),
        };
        for r in &rels {
            let p = relation_properties(r);
            if !(p.reflexive.holds() && p.symmetric.holds() && p.transitive.holds() && p.difunctional.holds()) {
                return fail(format!("Z_{n}: {:?} is not an equivalence", r.pairs()));
            }
        }
        total += rels.len();
    }
    let bare = OpAlgebra::new(2, Variety::Custom, vec![]).unwrap();
    let found = reflexive_relations(&bare, 100).relations.into_iter().find(|r| {
        let p = relation_properties(r);
        p.reflexive.holds() && !p.symmetric.holds()
    });
    match found {
        Some(r) => pass(format!("{total} relations over Z_1..Z_4; non-symmetric {:?} on the bare 2-set", r.pairs())),
        None => fail("no reflexive non-symmetric relation on the bare 2-element set"),
    }
}

fn c8() -> Outcome {
    for n in [2, 3] {
        let (k, pg) = group_kite(n).unwrap();
        let d = match delta(&k) {
            Ok(d) => d,
            Err(e) => return fail(format!("Z_{n}: delta: {e}")),
        };
        if !d.round_trip.is_identity() || !d.details.iter().all(|x| x.holds()) {
            return fail(format!("Z_{n}: mid mu delta is not the identity"));
        }
        let mu = mu_from_pregroupoid(&pg).unwrap();
        let m = m_from_theta(&k, &mu).unwrap();
        let sols = solve_m(&k, DEFAULT_CAP).unwrap();
        match sols.unique() {
            Some(s) if *s == m => {}
            _ => return fail(format!("Z_{n}: solver count {} and theta disagree", sols.count)),
        }
    }
    pass("Z_2 and Z_3")
}

fn c9() -> Outcome {
    let s = equiv23_sweep(3).unwrap();
    if s.total == 729 && s.agreeing == 729 {
        pass(format!("729/729 agree ({} cancellative)", s.cancellative))
    } else {
        fail(format!("{} of {} agree; first disagreement {:?}", s.agreeing, s.total, s.first_disagreement))
    }
}

fn c10() -> Outcome {
    let mut rng = StdRng::seed_from_u64(10);
    let mut pullbacks = 0;
    for i in 0..1000 {
        let m = rng.random_range(1..=16);
        let f: Vec<usize> = (0..rng.random_range(0..=16)).map(|_| rng.random_range(0..m)).collect();
        let u: Vec<usize> = (0..rng.random_range(0..=16)).map(|_| rng.random_range(0..m)).collect();
        let res = ismember(&f, &u);
        for (j, &x) in f.iter().enumerate() {
            let mut first = None;
            for (k, &y) in u.iter().enumerate() {
                if x == y {
                    first = Some(k);
                    break;
                }
            }
            if res.flags[j] != first.is_some() || res.positions[j] != first {
                return fail(format!("instance {i}: entry {j} differs from the oracle"));
            }
        }
        let mut sorted = u.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() == u.len() {
            let fm = FinMap::new(m, f.clone()).unwrap();
            let um = FinMap::new(m, u.clone()).unwrap();
            let (p1, p2) = ismember_pullback(&fm, &um).unwrap();
            let pb = pullback(&fm, &um).unwrap();
            if p1.table() != pb.p1.table() || p2.table() != pb.p2.table() {
                return fail(format!("instance {i}: pullback reading differs from pullback"));
            }
            pullbacks += 1;
        }
    }
    pass(format!("1000 instances; {pullbacks} with unique u match the pullback"))
}
