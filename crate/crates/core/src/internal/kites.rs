//! Directed kites, their multiplications, the canonical kites of reflexive
//! graphs, multiplicative graphs, categories, graph morphisms and spans, and
//! morphisms of directed kites.

use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finmap::{compose, compose_all, FinMap};
use crate::limits::{local_product, LocalProduct, SplitCospan};
use crate::report::{Detail, Verdict};
use crate::search::{PointwiseConstraints, Solutions};

use super::kpc::kpc;
use super::{MultiplicativeGraph, ReflexiveGraph, Span};

/// A split cospan `A -f-> B <-g- C` (sections `r`, `s`), legs
/// `alpha: A -> D`, `beta: B -> D`, `gamma: C -> D` and a span `(D, d, c)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct DirectedKite {
    pub f: FinMap,
    pub r: FinMap,
    pub g: FinMap,
    pub s: FinMap,
    pub alpha: FinMap,
    pub beta: FinMap,
    pub gamma: FinMap,
    pub d: FinMap,
    pub c: FinMap,
}

fn equation(name: &str, lhs: Result<FinMap>, rhs: Result<FinMap>) -> Detail {
    match (lhs, rhs) {
        (Ok(l), Ok(r)) => Detail::new(name, Verdict::from_witness(name, l.first_difference(&r))),
        _ => Detail::new(name, Verdict::fails(name, "ill-typed")),
    }
}

impl DirectedKite {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        f: FinMap,
        r: FinMap,
        g: FinMap,
        s: FinMap,
        alpha: FinMap,
        beta: FinMap,
        gamma: FinMap,
        d: FinMap,
        c: FinMap,
    ) -> Result<Self> {
        let k = DirectedKite { f, r, g, s, alpha, beta, gamma, d, c };
        k.check_typing()?;
        Ok(k)
    }

    pub fn check_typing(&self) -> Result<()> {
        let (a, b, c_, dd) = (self.f.dom(), self.f.cod(), self.g.dom(), self.alpha.cod());
        let ok = self.r.dom() == b
            && self.r.cod() == a
            && self.g.cod() == b
            && self.s.dom() == b
            && self.s.cod() == c_
            && self.alpha.dom() == a
            && self.beta.dom() == b
            && self.beta.cod() == dd
            && self.gamma.dom() == c_
            && self.gamma.cod() == dd
            && self.d.dom() == dd
            && self.c.dom() == dd;
        if ok {
            Ok(())
        } else {
            Err(Error::DomainMismatch(format!(
                "directed kite maps are mistyped: f {:?}, r {:?}, g {:?}, s {:?}, alpha {:?}, beta {:?}, gamma {:?}, d {:?}, c {:?}",
                self.f, self.r, self.g, self.s, self.alpha, self.beta, self.gamma, self.d, self.c
            )))
        }
    }

    pub fn cospan(&self) -> SplitCospan {
        SplitCospan { f: self.f.clone(), r: self.r.clone(), g: self.g.clone(), s: self.s.clone() }
    }

    pub fn span(&self) -> Span {
        Span { d: self.d.clone(), c: self.c.clone() }
    }

    pub fn check(&self) -> Vec<Detail> {
        let id_b = FinMap::identity(self.f.cod());
        vec![
            equation("f r = 1_B", compose(&self.f, &self.r), Ok(id_b.clone())),
            equation("g s = 1_B", compose(&self.g, &self.s), Ok(id_b)),
            equation("alpha r = beta", compose(&self.alpha, &self.r), Ok(self.beta.clone())),
            equation("gamma s = beta", compose(&self.gamma, &self.s), Ok(self.beta.clone())),
            equation("d alpha = d beta f", compose(&self.d, &self.alpha), compose_all(&[&self.d, &self.beta, &self.f])),
            equation("c beta g = c gamma", compose_all(&[&self.c, &self.beta, &self.g]), compose(&self.c, &self.gamma)),
        ]
    }

    pub fn is_valid(&self) -> bool {
        self.check().iter().all(Detail::holds)
    }

    pub fn local_product(&self) -> Result<LocalProduct> {
        local_product(&self.cospan())
    }

    /// Every `m: A x_B C -> D` with `d m = d gamma pi2`, `c m = c alpha pi1`,
    /// `m e1 = alpha` and `m e2 = gamma`.
    pub fn multiplications(&self, cap: usize) -> Result<Solutions> {
        let lp = self.local_product()?;
        let dd = self.alpha.cod();
        let d_target = compose_all(&[&self.d, &self.gamma, lp.p2()])?;
        let c_target = compose_all(&[&self.c, &self.alpha, lp.p1()])?;
        let mut cons = PointwiseConstraints::new(lp.size(), dd);
        for x in 0..lp.size() {
            cons.require_leg(x, &self.d, d_target.apply(x));
            cons.require_leg(x, &self.c, c_target.apply(x));
        }
        for a in 0..self.alpha.dom() {
            cons.fix(lp.e1.apply(a), self.alpha.apply(a));
        }
        for c in 0..self.gamma.dom() {
            cons.fix(lp.e2.apply(c), self.gamma.apply(c));
        }
        Ok(cons.solve(cap))
    }

    /// The four equations of a multiplication, checked for a given `m`.
    pub fn check_multiplication(&self, m: &FinMap) -> Result<Vec<Detail>> {
        let lp = self.local_product()?;
        if m.dom() != lp.size() || m.cod() != self.alpha.cod() {
            return Err(Error::DomainMismatch(format!(
                "a multiplication maps the {} points of the local product to D, got {:?}",
                lp.size(),
                m
            )));
        }
        Ok(vec![
            equation("m e1 = alpha", compose(m, &lp.e1), Ok(self.alpha.clone())),
            equation("m e2 = gamma", compose(m, &lp.e2), Ok(self.gamma.clone())),
            equation("d m = d gamma pi2", compose(&self.d, m), compose_all(&[&self.d, &self.gamma, lp.p2()])),
            equation("c m = c alpha pi1", compose(&self.c, m), compose_all(&[&self.c, &self.alpha, lp.p1()])),
        ])
    }
}

/// `C1 =d,c=> C0`, `f = d`, `r = s = e`, `g = c`, `alpha = gamma = 1`, `beta = e`.
pub fn kite_from_rg(rg: &ReflexiveGraph) -> Result<DirectedKite> {
    let id = FinMap::identity(rg.arrows());
    DirectedKite::new(
        rg.d.clone(),
        rg.e.clone(),
        rg.c.clone(),
        rg.e.clone(),
        id.clone(),
        rg.e.clone(),
        id,
        rg.d.clone(),
        rg.c.clone(),
    )
}

/// `A = C = C2`, `f = pi2`, `r = e2`, `g = pi1`, `s = e1`, `alpha = gamma = m`,
/// `beta = 1`.
pub fn kite_from_umg(umg: &MultiplicativeGraph) -> Result<DirectedKite> {
    DirectedKite::new(
        umg.pairs.p2.clone(),
        umg.e2.clone(),
        umg.pairs.p1.clone(),
        umg.e1.clone(),
        umg.m.clone(),
        FinMap::identity(umg.graph.arrows()),
        umg.m.clone(),
        umg.graph.d.clone(),
        umg.graph.c.clone(),
    )
}

/// `A = C = C2`, `f = g = m`, `r = e2`, `s = e1`, `alpha = pi2`, `gamma = pi1`,
/// `beta = 1`.
pub fn kite_from_cat(cat: &MultiplicativeGraph) -> Result<DirectedKite> {
    DirectedKite::new(
        cat.m.clone(),
        cat.e2.clone(),
        cat.m.clone(),
        cat.e1.clone(),
        cat.pairs.p2.clone(),
        FinMap::identity(cat.graph.arrows()),
        cat.pairs.p1.clone(),
        cat.graph.d.clone(),
        cat.graph.c.clone(),
    )
}

/// A morphism `(f1, f0)` of reflexive graphs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct RgMorphism {
    pub source: ReflexiveGraph,
    pub target: ReflexiveGraph,
    pub f1: FinMap,
    pub f0: FinMap,
}

impl RgMorphism {
    pub fn validate(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        square("d' f1 = f0 d", &compose(&t.d, &self.f1)?, &compose(&self.f0, &s.d)?)?;
        square("c' f1 = f0 c", &compose(&t.c, &self.f1)?, &compose(&self.f0, &s.c)?)?;
        square("f1 e = e' f0", &compose(&self.f1, &s.e)?, &compose(&t.e, &self.f0)?)
    }
}

/// `f = d`, `r = s = e`, `g = c`, `alpha = gamma = f1`, `beta = e' f0`,
/// directed by `(C1', d', c')`.
pub fn kite_from_rg_morphism(h: &RgMorphism) -> Result<DirectedKite> {
    h.validate()?;
    let (s, t) = (&h.source, &h.target);
    DirectedKite::new(
        s.d.clone(),
        s.e.clone(),
        s.c.clone(),
        s.e.clone(),
        h.f1.clone(),
        compose(&t.e, &h.f0)?,
        h.f1.clone(),
        t.d.clone(),
        t.c.clone(),
    )
}

/// `D(d) -d2-> D <-c1- D(c)` with diagonal sections, `alpha = d1`, `beta = 1`,
/// `gamma = c2`. Its local product is `D(d, c)` with the same labels, so its
/// multiplications are exactly the pregroupoid structures on the span.
pub fn kite_from_span(span: &Span) -> Result<DirectedKite> {
    let k = kpc(span);
    DirectedKite::new(
        k.d2,
        k.kd.diagonal,
        k.c1,
        k.kc.diagonal,
        k.d1,
        FinMap::identity(span.apex()),
        k.c2,
        span.d.clone(),
        span.c.clone(),
    )
}

fn square(name: &str, lhs: &FinMap, rhs: &FinMap) -> Result<()> {
    match lhs.first_difference(rhs) {
        None if lhs.cod() == rhs.cod() && lhs.dom() == rhs.dom() => Ok(()),
        None => Err(Error::NonCommutingSquare { square: name.to_string(), witness: 0 }),
        Some(w) => Err(Error::NonCommutingSquare { square: name.to_string(), witness: w }),
    }
}

/// A morphism of directed kites: components on `A, B, C, D, D0, D1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct KiteMorphism {
    pub source: DirectedKite,
    pub target: DirectedKite,
    pub h_a: FinMap,
    pub h_b: FinMap,
    pub h_c: FinMap,
    pub h_d: FinMap,
    pub h_0: FinMap,
    pub h_1: FinMap,
}

impl KiteMorphism {
    pub fn identity(k: &DirectedKite) -> Self {
        KiteMorphism {
            source: k.clone(),
            target: k.clone(),
            h_a: FinMap::identity(k.f.dom()),
            h_b: FinMap::identity(k.f.cod()),
            h_c: FinMap::identity(k.g.dom()),
            h_d: FinMap::identity(k.alpha.cod()),
            h_0: FinMap::identity(k.d.cod()),
            h_1: FinMap::identity(k.c.cod()),
        }
    }

    /// Checks every square formed by the named maps:
    /// `f, r, g, s` against `h_A, h_B, h_C`; `alpha, beta, gamma` against
    /// `h_D`; `d, c` against `h_0, h_1`.
    pub fn validate(&self) -> Result<()> {
        let (k, l) = (&self.source, &self.target);
        square("h_B f = f' h_A", &compose(&self.h_b, &k.f)?, &compose(&l.f, &self.h_a)?)?;
        square("h_A r = r' h_B", &compose(&self.h_a, &k.r)?, &compose(&l.r, &self.h_b)?)?;
        square("h_B g = g' h_C", &compose(&self.h_b, &k.g)?, &compose(&l.g, &self.h_c)?)?;
        square("h_C s = s' h_B", &compose(&self.h_c, &k.s)?, &compose(&l.s, &self.h_b)?)?;
        square("h_D alpha = alpha' h_A", &compose(&self.h_d, &k.alpha)?, &compose(&l.alpha, &self.h_a)?)?;
        square("h_D beta = beta' h_B", &compose(&self.h_d, &k.beta)?, &compose(&l.beta, &self.h_b)?)?;
        square("h_D gamma = gamma' h_C", &compose(&self.h_d, &k.gamma)?, &compose(&l.gamma, &self.h_c)?)?;
        square("d' h_D = h_0 d", &compose(&l.d, &self.h_d)?, &compose(&self.h_0, &k.d)?)?;
        square("c' h_D = h_1 c", &compose(&l.c, &self.h_d)?, &compose(&self.h_1, &k.c)?)
    }
}

/// The source cospan with legs `h_D alpha`, `h_D beta`, `h_D gamma`, directed
/// by the target span.
pub fn induced_kite(h: &KiteMorphism) -> Result<DirectedKite> {
    h.validate()?;
    let k = &h.source;
    DirectedKite::new(
        k.f.clone(),
        k.r.clone(),
        k.g.clone(),
        k.s.clone(),
        compose(&h.h_d, &k.alpha)?,
        compose(&h.h_d, &k.beta)?,
        compose(&h.h_d, &k.gamma)?,
        h.target.d.clone(),
        h.target.c.clone(),
    )
}

/// `h_D m = m' (h_A x_{h_B} h_C)` for multiplications `m` of the source and
/// `m'` of the target.
pub fn compat_check(h: &KiteMorphism, m: &FinMap, m2: &FinMap) -> Result<Verdict> {
    h.validate()?;
    let lp = h.source.local_product()?;
    let lp2 = h.target.local_product()?;
    let induced = lp.apex.induced(&lp2.apex, &h.h_a, &h.h_c)?;
    let lhs = compose(&h.h_d, m)?;
    let rhs = compose(m2, &induced)?;
    Ok(Verdict::from_witness("h_D m = m' (h_A x_{h_B} h_C)", lhs.first_difference(&rhs)))
}
