//! The Kite Condition on finite instances: hypothesis checking, the solver for
//! `m`, the canonical `theta` and `delta` maps, and admissibility counts for
//! weakly Mal'tsev objects.

use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finmap::{compose, compose_all, jointly_monic, FinMap};
use crate::internal::{kite_from_span, kpc_swapped, DirectedKite, MultiplicativeGraph, Pregroupoid, Span};
use crate::limits::{local_product, LocalProductDiagram, SplitCospan};
use crate::report::{Detail, Outcome, Report, Verdict};
use crate::search::{PointwiseConstraints, SolutionCount, Solutions};

/// `A <-> E <-> C` with legs `alpha: A -> D`, `beta: E -> D`, `gamma: C -> D`
/// and a span `(D, d, c)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct KiteDiagram {
    pub p1: FinMap,
    pub p2: FinMap,
    pub e1: FinMap,
    pub e2: FinMap,
    pub alpha: FinMap,
    pub beta: FinMap,
    pub gamma: FinMap,
    pub d: FinMap,
    pub c: FinMap,
}

fn equation(name: &str, lhs: &FinMap, rhs: &FinMap) -> Detail {
    Detail::new(name, Verdict::from_witness(name, lhs.first_difference(rhs)))
}

impl KiteDiagram {
    pub fn check_typing(&self) -> Result<()> {
        self.diagram().check_typing()?;
        let e = self.p1.dom();
        let dd = self.beta.cod();
        let ok = self.alpha.dom() == self.p1.cod()
            && self.gamma.dom() == self.p2.cod()
            && self.beta.dom() == e
            && self.alpha.cod() == dd
            && self.gamma.cod() == dd
            && self.d.dom() == dd
            && self.c.dom() == dd;
        if ok {
            Ok(())
        } else {
            Err(Error::DomainMismatch(format!(
                "expected alpha: A->D, beta: E->D, gamma: C->D, d, c out of D; got alpha {:?}, beta {:?}, gamma {:?}, d {:?}, c {:?}",
                self.alpha, self.beta, self.gamma, self.d, self.c
            )))
        }
    }

    pub fn diagram(&self) -> LocalProductDiagram {
        LocalProductDiagram { p1: self.p1.clone(), p2: self.p2.clone(), e1: self.e1.clone(), e2: self.e2.clone() }
    }

    pub fn span(&self) -> Span {
        Span { d: self.d.clone(), c: self.c.clone() }
    }

    /// The local product of a directed kite, with `beta` pulled back to `E`
    /// along `f p1`.
    pub fn from_directed(k: &DirectedKite) -> Result<Self> {
        let lp = k.local_product()?;
        Ok(KiteDiagram {
            p1: lp.p1().clone(),
            p2: lp.p2().clone(),
            e1: lp.e1.clone(),
            e2: lp.e2.clone(),
            alpha: k.alpha.clone(),
            beta: compose_all(&[&k.beta, &k.f, lp.p1()])?,
            gamma: k.gamma.clone(),
            d: k.d.clone(),
            c: k.c.clone(),
        })
    }

    /// `p1 e2 p2` and `p2 e1 p1`.
    fn cross_maps(&self) -> Result<(FinMap, FinMap)> {
        Ok((compose_all(&[&self.p1, &self.e2, &self.p2])?, compose_all(&[&self.p2, &self.e1, &self.p1])?))
    }
}

/// Conditions (1)-(5) elementwise; (6) is automatic in finite sets.
pub fn check_hypotheses(k: &KiteDiagram) -> Result<Vec<Detail>> {
    k.check_typing()?;
    let mut out = k.diagram().split_square_conditions()?;
    let (a_side, c_side) = k.cross_maps()?;
    out.push(equation("(4) alpha p1 e2 p2 = beta", &compose(&k.alpha, &a_side)?, &k.beta));
    out.push(equation("(4) gamma p2 e1 p1 = beta", &compose(&k.gamma, &c_side)?, &k.beta));
    out.push(equation(
        "(5) d alpha p1 = d alpha p1 e2 p2",
        &compose_all(&[&k.d, &k.alpha, &k.p1])?,
        &compose_all(&[&k.d, &k.alpha, &a_side])?,
    ));
    out.push(equation(
        "(5) c gamma p2 = c gamma p2 e1 p1",
        &compose_all(&[&k.c, &k.gamma, &k.p2])?,
        &compose_all(&[&k.c, &k.gamma, &c_side])?,
    ));
    out.push(Detail::note("(6) kernel pairs of d and c exist", Outcome::Holds));
    Ok(out)
}

pub fn check_hypotheses_report(k: &KiteDiagram) -> Result<Report> {
    Ok(Report::from_details("kite check", check_hypotheses(k)?))
}

/// Every `m: E -> D` with `m e1 = alpha`, `m e2 = gamma`, `d m = d gamma p2`
/// and `c m = c alpha p1`, lexicographically ordered.
pub fn solve_m(k: &KiteDiagram, cap: usize) -> Result<Solutions> {
    if let Some(v) = crate::report::first_failure(&check_hypotheses(k)?) {
        return Err(Error::HypothesisViolation(format!("{} fails at {}", v.condition, v.witness)));
    }
    let dd = k.beta.cod();
    let d_target = compose_all(&[&k.d, &k.gamma, &k.p2])?;
    let c_target = compose_all(&[&k.c, &k.alpha, &k.p1])?;
    let mut cons = PointwiseConstraints::new(k.p1.dom(), dd);
    for x in 0..k.p1.dom() {
        cons.require_leg(x, &k.d, d_target.apply(x));
        cons.require_leg(x, &k.c, c_target.apply(x));
    }
    for a in 0..k.alpha.dom() {
        cons.fix(k.e1.apply(a), k.alpha.apply(a));
    }
    for c in 0..k.gamma.dom() {
        cons.fix(k.e2.apply(c), k.gamma.apply(c));
    }
    Ok(cons.solve(cap))
}

/// The multiplication `((x,y,z),(z,w,v)) -> (x, p(y,z,w), v)` on the
/// composable pairs of `K(D, c, d)` induced by a pregroupoid structure `p` on
/// `(D, d, c)`.
pub fn mu_from_pregroupoid(pg: &Pregroupoid) -> Result<MultiplicativeGraph> {
    let k = kpc_swapped(&pg.span);
    let graph = k.graph();
    let pairs = graph.composable();
    let table = pairs
        .labels
        .iter()
        .map(|&(i, j)| {
            let (x, y, z) = k.labels[i];
            let (_, w, v) = k.labels[j];
            let mid = pg.apply(y, z, w).ok_or_else(|| Error::IllTyped(format!("({y}, {z}, {w}) is not in D(d,c)")))?;
            k.index_of(x, mid, v).ok_or_else(|| Error::IllTyped(format!("({x}, {mid}, {v}) is not in D(c,d)")))
        })
        .collect::<Result<Vec<_>>>()?;
    MultiplicativeGraph::new(graph, FinMap::with_dom(pairs.size(), k.size(), table)?)
}

fn ensure_mu(span: &Span, mu: &MultiplicativeGraph) -> Result<()> {
    if mu.graph != kpc_swapped(span).graph() {
        return Err(Error::IllTyped("mu must be a multiplication on K(D, c, d) of the kite's span".into()));
    }
    if let Some(v) = crate::report::first_failure(&mu.check_unital()) {
        return Err(Error::IllTyped(format!("mu is not unital: {} fails at {}", v.condition, v.witness)));
    }
    Ok(())
}

/// `theta = <<alpha p1, alpha p1, beta>, <beta, gamma p2, gamma p2>>` into the
/// composable pairs of `K(D, c, d)`.
pub fn theta(k: &KiteDiagram, mu: &MultiplicativeGraph) -> Result<FinMap> {
    ensure_mu(&k.span(), mu)?;
    let triples = kpc_swapped(&k.span());
    let ap = compose(&k.alpha, &k.p1)?;
    let gp = compose(&k.gamma, &k.p2)?;
    let table = (0..k.p1.dom())
        .map(|x| {
            let (a, b, g) = (ap.apply(x), k.beta.apply(x), gp.apply(x));
            let t1 = triples.index_of(a, a, b);
            let t2 = triples.index_of(b, g, g);
            match (t1, t2) {
                (Some(i), Some(j)) => mu.pairs.index_of(i, j).ok_or_else(|| Error::IllTyped(format!("theta({x}) is not composable"))),
                _ => Err(Error::IllTyped(format!("theta({x}) leaves D(c,d): ({a},{a},{b}), ({b},{g},{g})"))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    FinMap::with_dom(k.p1.dom(), mu.pairs.size(), table)
}

/// `mid mu theta`.
pub fn m_from_theta(k: &KiteDiagram, mu: &MultiplicativeGraph) -> Result<FinMap> {
    let t = theta(k, mu)?;
    compose_all(&[&kpc_swapped(&k.span()).mid, &mu.m, &t])
}

/// The canonical `delta` and the multiplication it is taken with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Delta {
    /// The pregroupoid structure on `(E, p2, p1)` that `mu_E` comes from.
    pub structure: Pregroupoid,
    pub mu: MultiplicativeGraph,
    pub map: FinMap,
    /// `mid mu delta`.
    pub round_trip: FinMap,
    pub details: Vec<Detail>,
}

/// `delta = <<e1p1, e1p1, e1p1e2p2>, <e1p1e2p2, e2p2, e2p2>>` together with the
/// checks `p1 mid mu delta = p1`, `p2 mid mu delta = p2` and
/// `mid mu delta = 1_E`.
pub fn delta(k: &KiteDiagram) -> Result<Delta> {
    let hyps = check_hypotheses(k)?;
    if let Some(v) = crate::report::first_failure(&hyps[..4]) {
        return Err(Error::HypothesisViolation(format!("{} fails at {}", v.condition, v.witness)));
    }
    let e = k.p1.dom();
    let span = Span { d: k.p2.clone(), c: k.p1.clone() };
    // (p1, p2) is jointly monic, so there is at most one structure
    let sols = crate::internal::pregroupoid_structures(&span, 2);
    let p = sols
        .unique()
        .ok_or_else(|| Error::IllTyped(format!("(E, p2, p1) has {} pregroupoid structures, expected 1", sols.count)))?
        .clone();
    let structure = Pregroupoid::new(span.clone(), p)?;
    let mu = mu_from_pregroupoid(&structure)?;
    let triples = kpc_swapped(&span);
    let i1 = compose(&k.e1, &k.p1)?;
    let i2 = compose(&k.e2, &k.p2)?;
    let i12 = compose(&i1, &i2)?;
    let table = (0..e)
        .map(|x| {
            let (a, b, c) = (i1.apply(x), i12.apply(x), i2.apply(x));
            let t1 = triples.index_of(a, a, b);
            let t2 = triples.index_of(b, c, c);
            t1.zip(t2)
                .and_then(|(i, j)| mu.pairs.index_of(i, j))
                .ok_or_else(|| Error::IllTyped(format!("delta({x}) is not a composable pair")))
        })
        .collect::<Result<Vec<_>>>()?;
    let map = FinMap::with_dom(e, mu.pairs.size(), table)?;
    let round_trip = compose_all(&[&triples.mid, &mu.m, &map])?;
    let id = FinMap::identity(e);
    let details = vec![
        equation("p1 mid mu delta = p1", &compose(&k.p1, &round_trip)?, &k.p1),
        equation("p2 mid mu delta = p2", &compose(&k.p2, &round_trip)?, &k.p2),
        Detail::new(
            "(p1, p2) jointly monic",
            if jointly_monic(&k.p1, &k.p2)? { Verdict::Holds } else { Verdict::fails("(p1, p2) jointly monic", "E") },
        ),
        equation("mid mu delta = 1_E", &round_trip, &id),
    ];
    Ok(Delta { structure, mu, map, round_trip, details })
}

/// The kite of the span `(Z_n x Z_n, pi1, pi2)` (the kernel pair construction
/// kite of a span of group homomorphisms) and its structure
/// `p(x, y, z) = x - y + z`.
pub fn group_kite(n: usize) -> Result<(KiteDiagram, Pregroupoid)> {
    let n2 = n * n;
    let span = Span::new(FinMap::from_fn(n2, n, |x| x / n)?, FinMap::from_fn(n2, n, |x| x % n)?)?;
    let k = KiteDiagram::from_directed(&kite_from_span(&span)?)?;
    let sub = |x: usize, y: usize, z: usize| ((x / n + n - y / n + z / n) % n) * n + (x % n + n - y % n + z % n) % n;
    let pg = Pregroupoid::from_fn(span, sub)?;
    Ok((k, pg))
}

/// A kite `A -f-> B <-g- C` with sections and legs into `D`, without direction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct AdmissibilityKite {
    pub f: FinMap,
    pub r: FinMap,
    pub g: FinMap,
    pub s: FinMap,
    pub alpha: FinMap,
    pub beta: FinMap,
    pub gamma: FinMap,
}

impl AdmissibilityKite {
    pub fn cospan(&self) -> SplitCospan {
        SplitCospan { f: self.f.clone(), r: self.r.clone(), g: self.g.clone(), s: self.s.clone() }
    }

    pub fn check(&self) -> Result<Vec<Detail>> {
        self.cospan().validate()?;
        let b = self.f.cod();
        if self.alpha.dom() != self.f.dom()
            || self.gamma.dom() != self.g.dom()
            || self.beta.dom() != b
            || self.alpha.cod() != self.beta.cod()
            || self.gamma.cod() != self.beta.cod()
        {
            return Err(Error::DomainMismatch("alpha: A -> D, beta: B -> D, gamma: C -> D expected".into()));
        }
        Ok(vec![
            equation("alpha r = beta", &compose(&self.alpha, &self.r)?, &self.beta),
            equation("gamma s = beta", &compose(&self.gamma, &self.s)?, &self.beta),
        ])
    }

    /// Post-composes the three legs with `h: D -> D'`.
    pub fn pushed(&self, h: &FinMap) -> Result<AdmissibilityKite> {
        Ok(AdmissibilityKite {
            alpha: compose(h, &self.alpha)?,
            beta: compose(h, &self.beta)?,
            gamma: compose(h, &self.gamma)?,
            ..self.clone()
        })
    }
}

/// Every `phi: A x_B C -> D` with `phi e1 = alpha` and `phi e2 = gamma`.
pub fn admissibility_count(k: &AdmissibilityKite, cap: usize) -> Result<Solutions> {
    if let Some(v) = crate::report::first_failure(&k.check()?) {
        return Err(Error::HypothesisViolation(format!("{} fails at {}", v.condition, v.witness)));
    }
    let lp = local_product(&k.cospan())?;
    let mut cons = PointwiseConstraints::new(lp.size(), k.beta.cod());
    for a in 0..k.alpha.dom() {
        cons.fix(lp.e1.apply(a), k.alpha.apply(a));
    }
    for c in 0..k.gamma.dom() {
        cons.fix(lp.e2.apply(c), k.gamma.apply(c));
    }
    Ok(cons.solve(cap))
}

/// `B = 1`, `A = C = D = n`, `alpha = gamma = 1`, both sections at `0`.
pub fn wm_witness_kite(n: usize) -> Result<AdmissibilityKite> {
    let zero = FinMap::constant(1, n, 0)?;
    Ok(AdmissibilityKite {
        f: FinMap::to_terminal(n),
        r: zero.clone(),
        g: FinMap::to_terminal(n),
        s: zero.clone(),
        alpha: FinMap::identity(n),
        beta: zero,
        gamma: FinMap::identity(n),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WmCheck {
    pub size: usize,
    pub weakly_maltsev: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<AdmissibilityKite>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<SolutionCount>,
}

/// A finite set of size `n` is a weakly Mal'tsev object iff `n <= 1`; for
/// larger `n` the witness kite has `n^((n-1)^2)` admissibility morphisms.
pub fn wm_object_check_finset(n: usize, cap: usize) -> Result<WmCheck> {
    if n <= 1 {
        return Ok(WmCheck { size: n, weakly_maltsev: true, witness: None, count: None });
    }
    let k = wm_witness_kite(n)?;
    let sols = admissibility_count(&k, cap)?;
    Ok(WmCheck { size: n, weakly_maltsev: sols.count.at_most_one(), witness: Some(k), count: Some(sols.count) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::internal::{kite_from_cat, kite_from_rg, ReflexiveGraph};
    use crate::search::DEFAULT_CAP;

    fn m(cod: usize, t: &[usize]) -> FinMap {
        FinMap::new(cod, t.to_vec()).unwrap()
    }

    fn preorder_kite() -> KiteDiagram {
        let g = ReflexiveGraph::new(m(2, &[0, 1, 0]), m(2, &[0, 1, 1]), m(3, &[0, 1])).unwrap();
        KiteDiagram::from_directed(&kite_from_rg(&g).unwrap()).unwrap()
    }

    #[test]
    fn assembled_kite_satisfies_hypotheses() {
        assert!(check_hypotheses(&preorder_kite()).unwrap().iter().all(Detail::holds));
        assert!(solve_m(&preorder_kite(), DEFAULT_CAP).unwrap().count.is_unique());
    }

    #[test]
    fn swapped_injections_fail_condition_one() {
        // A and C have the same size in the group kite
        let (g, _) = group_kite(2).unwrap();
        let k = KiteDiagram { e1: g.e2.clone(), e2: g.e1.clone(), ..g };
        let details = check_hypotheses(&k).unwrap();
        assert!(!details[0].holds());
        assert!(details[0].witness.is_some());
    }

    #[test]
    fn singleton_kite() {
        let one = FinMap::identity(1);
        let k = KiteDiagram {
            p1: one.clone(),
            p2: one.clone(),
            e1: one.clone(),
            e2: one.clone(),
            alpha: one.clone(),
            beta: one.clone(),
            gamma: one.clone(),
            d: one.clone(),
            c: one,
        };
        assert!(check_hypotheses(&k).unwrap().iter().all(Detail::holds));
        let sols = solve_m(&k, DEFAULT_CAP).unwrap();
        assert!(sols.count.is_unique());
    }

    #[test]
    fn finite_set_witness_has_two_solutions() {
        let two = FinMap::identity(2);
        let zero = m(2, &[0]);
        let dk = DirectedKite::new(
            FinMap::to_terminal(2),
            zero.clone(),
            FinMap::to_terminal(2),
            zero.clone(),
            two.clone(),
            zero,
            two,
            FinMap::to_terminal(2),
            FinMap::to_terminal(2),
        )
        .unwrap();
        let k = KiteDiagram::from_directed(&dk).unwrap();
        let sols = solve_m(&k, DEFAULT_CAP).unwrap();
        assert_eq!(sols.count, SolutionCount::Exact(2));
        // only (1, 1) is off the cross
        assert_eq!(sols.maps[0].table(), &[0, 1, 1, 0]);
        assert_eq!(sols.maps[1].table(), &[0, 1, 1, 1]);
    }

    #[test]
    fn z2_groupoid_kite3_in_finite_sets() {
        let table: Vec<usize> = (0..4).map(|k| (k / 2) ^ (k % 2)).collect();
        let cat = MultiplicativeGraph::from_monoid(2, &table, 0).unwrap();
        let k = KiteDiagram::from_directed(&kite_from_cat(&cat).unwrap()).unwrap();
        let sols = solve_m(&k, DEFAULT_CAP).unwrap();
        // the kite of a groupoid over finite sets leaves points off the cross free
        assert_eq!(sols.count, SolutionCount::Exact(4));
    }

    #[test]
    fn theta_and_delta_on_group_kites() {
        for n in [2, 3] {
            let (k, pg) = group_kite(n).unwrap();
            assert!(pg.check().iter().all(Detail::holds));
            let sols = solve_m(&k, DEFAULT_CAP).unwrap();
            let unique = sols.unique().expect("jointly monic span");
            let mu = mu_from_pregroupoid(&pg).unwrap();
            assert_eq!(&m_from_theta(&k, &mu).unwrap(), unique);
            let dl = delta(&k).unwrap();
            assert!(dl.details.iter().all(Detail::holds));
            assert!(dl.round_trip.is_identity());
        }
    }

    #[test]
    fn hypothesis_violation_is_an_error() {
        let mut k = preorder_kite();
        k.beta = FinMap::constant(k.beta.dom(), 3, 2).unwrap();
        assert!(matches!(solve_m(&k, DEFAULT_CAP), Err(Error::HypothesisViolation(_))));
    }

    #[test]
    fn wm_finset() {
        assert!(wm_object_check_finset(0, DEFAULT_CAP).unwrap().weakly_maltsev);
        assert!(wm_object_check_finset(1, DEFAULT_CAP).unwrap().weakly_maltsev);
        let two = wm_object_check_finset(2, DEFAULT_CAP).unwrap();
        assert!(!two.weakly_maltsev);
        assert_eq!(two.count, Some(SolutionCount::Exact(2)));
        let six = wm_object_check_finset(6, DEFAULT_CAP).unwrap();
        assert_eq!(six.count, Some(SolutionCount::Exact(6u128.pow(25))));
    }

    #[test]
    fn singleton_target_admits_one() {
        let k = wm_witness_kite(2).unwrap().pushed(&FinMap::to_terminal(2)).unwrap();
        assert!(admissibility_count(&k, DEFAULT_CAP).unwrap().count.is_unique());
    }
}
