//! Pullbacks, kernel pairs, local products, pushouts of split monos and the
//! comparison between them, in finite sets.
//!
//! Every constructed apex carries its element labels in lexicographic order and
//! equality of constructed objects is always label-wise.

use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finmap::{compose, compose_all, jointly_epic, jointly_monic_witness, FinMap};
use crate::internal::Span;
use crate::report::{Detail, Verdict};
use crate::search::{PointwiseConstraints, Solutions};

/// The pullback of `g: C -> B` along `f: A -> B`: pairs `(a, c)` with `f(a) = g(c)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pullback {
    pub labels: Vec<(usize, usize)>,
    pub p1: FinMap,
    pub p2: FinMap,
}

impl Pullback {
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn index_of(&self, a: usize, c: usize) -> Option<usize> {
        self.labels.binary_search(&(a, c)).ok()
    }

    /// The map `<u, v>: Z -> A x_B C`; fails at the first `z` with `f u(z) != g v(z)`.
    pub fn pair(&self, u: &FinMap, v: &FinMap) -> Result<FinMap> {
        if u.dom() != v.dom() || u.cod() != self.p1.cod() || v.cod() != self.p2.cod() {
            return Err(Error::DomainMismatch(format!(
                "pairing {u:?} with {v:?} into a pullback over {}x{}",
                self.p1.cod(),
                self.p2.cod()
            )));
        }
        let table = (0..u.dom())
            .map(|z| {
                self.index_of(u.apply(z), v.apply(z)).ok_or_else(|| {
                    Error::CompatibilityViolation(format!(
                        "({}, {}) at element {z} is not in the pullback",
                        u.apply(z),
                        v.apply(z)
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FinMap::from_table_unchecked(self.size(), table))
    }

    /// `h x_k l`: the map between pullbacks induced by `h` on the left and
    /// `l` on the right.
    pub fn induced(&self, target: &Pullback, left: &FinMap, right: &FinMap) -> Result<FinMap> {
        target.pair(&compose(left, &self.p1)?, &compose(right, &self.p2)?)
    }
}

/// Pairs `(a, c)` with `f(a) = g(c)`, lexicographically ordered.
pub fn pullback(f: &FinMap, g: &FinMap) -> Result<Pullback> {
    if f.cod() != g.cod() {
        return Err(Error::DomainMismatch(format!(
            "pullback needs a common codomain, got {} and {}",
            f.cod(),
            g.cod()
        )));
    }
    let mut over: Vec<Vec<usize>> = vec![Vec::new(); g.cod()];
    for c in 0..g.dom() {
        over[g.apply(c)].push(c);
    }
    let labels: Vec<(usize, usize)> = (0..f.dom())
        .flat_map(|a| over[f.apply(a)].iter().map(move |&c| (a, c)))
        .collect();
    let p1 = FinMap::from_table_unchecked(f.dom(), labels.iter().map(|l| l.0).collect());
    let p2 = FinMap::from_table_unchecked(g.dom(), labels.iter().map(|l| l.1).collect());
    Ok(Pullback { labels, p1, p2 })
}

/// The kernel pair of `h` together with its diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelPair {
    pub pairs: Pullback,
    pub diagonal: FinMap,
}

impl KernelPair {
    pub fn size(&self) -> usize {
        self.pairs.size()
    }

    pub fn labels(&self) -> &[(usize, usize)] {
        &self.pairs.labels
    }
}

pub fn kernel_pair(h: &FinMap) -> KernelPair {
    let pairs = pullback(h, h).expect("a map shares its codomain with itself");
    let id = FinMap::identity(h.dom());
    let diagonal = pairs.pair(&id, &id).expect("(x, x) lies in every kernel pair");
    KernelPair { pairs, diagonal }
}

/// `f: A -> B` with section `r`, and `g: C -> B` with section `s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct SplitCospan {
    pub f: FinMap,
    pub r: FinMap,
    pub g: FinMap,
    pub s: FinMap,
}

impl SplitCospan {
    pub fn new(f: FinMap, r: FinMap, g: FinMap, s: FinMap) -> Result<Self> {
        let sc = SplitCospan { f, r, g, s };
        sc.validate()?;
        Ok(sc)
    }

    pub fn a(&self) -> usize {
        self.f.dom()
    }

    pub fn b(&self) -> usize {
        self.f.cod()
    }

    pub fn c(&self) -> usize {
        self.g.dom()
    }

    pub fn validate(&self) -> Result<()> {
        let typed = self.r.dom() == self.b()
            && self.r.cod() == self.a()
            && self.g.cod() == self.b()
            && self.s.dom() == self.b()
            && self.s.cod() == self.c();
        if !typed {
            return Err(Error::DomainMismatch(format!(
                "split cospan needs f: A->B, r: B->A, g: C->B, s: B->C; got f {:?}, r {:?}, g {:?}, s {:?}",
                self.f, self.r, self.g, self.s
            )));
        }
        let fr = compose(&self.f, &self.r)?;
        if let Some(b) = (0..self.b()).find(|&b| fr.apply(b) != b) {
            return Err(Error::InvalidSplitting { equation: "f r = 1_B", witness: b });
        }
        let gs = compose(&self.g, &self.s)?;
        if let Some(b) = (0..self.b()).find(|&b| gs.apply(b) != b) {
            return Err(Error::InvalidSplitting { equation: "g s = 1_B", witness: b });
        }
        Ok(())
    }
}

/// `A x_B C` with its projections and the injections `e1 = <1, s f>`, `e2 = <r g, 1>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalProduct {
    pub apex: Pullback,
    pub e1: FinMap,
    pub e2: FinMap,
    pub source: SplitCospan,
}

impl LocalProduct {
    pub fn size(&self) -> usize {
        self.apex.size()
    }

    pub fn labels(&self) -> &[(usize, usize)] {
        &self.apex.labels
    }

    pub fn p1(&self) -> &FinMap {
        &self.apex.p1
    }

    pub fn p2(&self) -> &FinMap {
        &self.apex.p2
    }

    /// Whether the point lies on the cross `e1(A) u e2(C)`.
    pub fn on_cross(&self) -> Vec<bool> {
        let mut hit = self.e1.image_mask();
        for (h, e) in hit.iter_mut().zip(self.e2.image_mask()) {
            *h |= e;
        }
        hit
    }

    pub fn is_epimorphic(&self) -> bool {
        jointly_epic(&self.e1, &self.e2).expect("e1, e2 share the apex as codomain")
    }
}

pub fn local_product(sc: &SplitCospan) -> Result<LocalProduct> {
    sc.validate()?;
    let apex = pullback(&sc.f, &sc.g)?;
    let id_a = FinMap::identity(sc.a());
    let id_c = FinMap::identity(sc.c());
    let e1 = apex.pair(&id_a, &compose(&sc.s, &sc.f)?)?;
    let e2 = apex.pair(&compose(&sc.r, &sc.g)?, &id_c)?;
    Ok(LocalProduct { apex, e1, e2, source: sc.clone() })
}

/// The four maps of a candidate local product diagram `A <-> E <-> C`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct LocalProductDiagram {
    pub p1: FinMap,
    pub p2: FinMap,
    pub e1: FinMap,
    pub e2: FinMap,
}

impl From<&LocalProduct> for LocalProductDiagram {
    fn from(lp: &LocalProduct) -> Self {
        LocalProductDiagram {
            p1: lp.p1().clone(),
            p2: lp.p2().clone(),
            e1: lp.e1.clone(),
            e2: lp.e2.clone(),
        }
    }
}

impl LocalProductDiagram {
    pub fn check_typing(&self) -> Result<()> {
        let e = self.p1.dom();
        let ok = self.p2.dom() == e
            && self.e1.cod() == e
            && self.e2.cod() == e
            && self.e1.dom() == self.p1.cod()
            && self.e2.dom() == self.p2.cod();
        if ok {
            Ok(())
        } else {
            Err(Error::DomainMismatch(format!(
                "expected p1: E->A, p2: E->C, e1: A->E, e2: C->E; got p1 {:?}, p2 {:?}, e1 {:?}, e2 {:?}",
                self.p1, self.p2, self.e1, self.e2
            )))
        }
    }

    /// `e1 p1` and `e2 p2`, the two idempotents on `E`.
    pub fn idempotents(&self) -> Result<(FinMap, FinMap)> {
        Ok((compose(&self.e1, &self.p1)?, compose(&self.e2, &self.p2)?))
    }

    /// Conditions (1)-(3) shared by the intrinsic characterisation and the
    /// Kite Condition hypotheses.
    pub fn split_square_conditions(&self) -> Result<Vec<Detail>> {
        self.check_typing()?;
        let p1e1 = compose(&self.p1, &self.e1)?;
        let p2e2 = compose(&self.p2, &self.e2)?;
        let (i1, i2) = self.idempotents()?;
        let left = compose(&i1, &i2)?;
        let right = compose(&i2, &i1)?;
        Ok(vec![
            Detail::new(
                "(1) p1 e1 = 1_A",
                Verdict::from_witness("(1) p1 e1 = 1_A", (0..p1e1.dom()).find(|&a| p1e1.apply(a) != a)),
            ),
            Detail::new(
                "(1) p2 e2 = 1_C",
                Verdict::from_witness("(1) p2 e2 = 1_C", (0..p2e2.dom()).find(|&c| p2e2.apply(c) != c)),
            ),
            Detail::new(
                "(2) (e1 p1)(e2 p2) = (e2 p2)(e1 p1)",
                Verdict::from_witness("(2)", left.first_difference(&right)),
            ),
            Detail::new(
                "(3) (p1, p2) jointly monic",
                Verdict::from_witness("(3)", jointly_monic_witness(&self.p1, &self.p2)?),
            ),
        ])
    }
}

/// Outcome of [`check_local_product_intrinsic`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntrinsicCheck {
    pub details: Vec<Detail>,
    pub reconstruction: Option<Reconstruction>,
}

impl IntrinsicCheck {
    pub fn holds(&self) -> bool {
        self.details.iter().all(Detail::holds)
            && self.reconstruction.as_ref().is_some_and(|r| r.round_trip)
    }
}

/// The split cospan recovered from a diagram satisfying the four conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reconstruction {
    /// `B` as the pullback of `e1` along `e2`, labelled by pairs `(a, c)` with `e1(a) = e2(c)`.
    pub b_labels: Vec<(usize, usize)>,
    pub cospan: SplitCospan,
    pub local_product: LocalProduct,
    /// `x -> (p1 x, p2 x)` into the canonical apex, when it is a bijection.
    pub relabelling: Option<FinMap>,
    pub round_trip: bool,
}

/// Decides whether `A <-> E <-> C` is a local product without being told
/// `f` and `g`.
///
/// Condition (4) is tested on one-point stages `Z = 1`: finite sets are well
/// pointed, and uniqueness of the factorisation already follows from (3).
pub fn check_local_product_intrinsic(diagram: &LocalProductDiagram) -> Result<IntrinsicCheck> {
    let mut details = diagram.split_square_conditions()?;
    let LocalProductDiagram { p1, p2, e1, e2 } = diagram;
    let a_size = p1.cod();
    let c_size = p2.cod();

    // (4): u = a, v = c with p1 e2 p2 e1 a = p1 e2 c and p2 e1 a = p2 e1 p1 e2 c
    let lhs1 = compose_all(&[p1, e2, p2, e1])?;
    let rhs1 = compose(p1, e2)?;
    let lhs2 = compose(p2, e1)?;
    let rhs2 = compose_all(&[p2, e1, p1, e2])?;
    let mut points = std::collections::HashSet::new();
    for x in 0..p1.dom() {
        points.insert((p1.apply(x), p2.apply(x)));
    }
    let missing = (0..a_size)
        .flat_map(|a| (0..c_size).map(move |c| (a, c)))
        .find(|&(a, c)| {
            lhs1.apply(a) == rhs1.apply(c) && lhs2.apply(a) == rhs2.apply(c) && !points.contains(&(a, c))
        });
    details.push(Detail::new(
        "(4) compatible (u, v) factor through (p1, p2)",
        Verdict::from_witness("(4)", missing),
    ));

    if !details.iter().all(Detail::holds) {
        return Ok(IntrinsicCheck { details, reconstruction: None });
    }

    // B as the pullback of e1 along e2; r and s are its projections.
    let b = pullback(e1, e2)?;
    let r = b.p1.clone();
    let s = b.p2.clone();
    // f = <p1 e2 p2 e1, p2 e1>, g = <p1 e2, p2 e1 p1 e2>
    let f = b.pair(&lhs1, &lhs2);
    let g = b.pair(&rhs1, &rhs2);
    let (f, g) = match (f, g) {
        (Ok(f), Ok(g)) => (f, g),
        (Err(e), _) | (_, Err(e)) => {
            details.push(Detail::new("reconstructed f, g land in B", Verdict::fails("f, g", e.to_string())));
            return Ok(IntrinsicCheck { details, reconstruction: None });
        }
    };
    let cospan = match SplitCospan::new(f, r, g, s) {
        Ok(sc) => sc,
        Err(e) => {
            details.push(Detail::new("reconstructed cospan is split", Verdict::fails("split", e.to_string())));
            return Ok(IntrinsicCheck { details, reconstruction: None });
        }
    };
    let lp = local_product(&cospan)?;
    let relabelling = lp.apex.pair(p1, p2).ok().filter(FinMap::is_bijection);
    let round_trip = match &relabelling {
        Some(phi) => {
            compose(phi, e1)? == lp.e1
                && compose(phi, e2)? == lp.e2
                && compose(lp.p1(), phi)? == *p1
                && compose(lp.p2(), phi)? == *p2
        }
        None => false,
    };
    details.push(Detail::new(
        "local product of the reconstruction reproduces the diagram",
        if round_trip { Verdict::Holds } else { Verdict::fails("round trip", "relabelling") },
    ));
    Ok(IntrinsicCheck {
        details,
        reconstruction: Some(Reconstruction {
            b_labels: b.labels,
            cospan,
            local_product: lp,
            relabelling,
            round_trip,
        }),
    })
}

/// An element of `A + C`; `Left < Right`, so classes are labelled by their
/// least representative with `A` before `C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    Left(usize),
    Right(usize),
}

/// The pushout `A +_B C` of a span of split monos `A <-r- B -s-> C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pushout {
    pub classes: Vec<Side>,
    pub i1: FinMap,
    pub i2: FinMap,
}

impl Pushout {
    pub fn size(&self) -> usize {
        self.classes.len()
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Disjoint union of `A` and `C` with `r(b) ~ s(b)`, closed by union-find.
pub fn pushout_split_mono(r: &FinMap, s: &FinMap) -> Result<Pushout> {
    if r.dom() != s.dom() {
        return Err(Error::DomainMismatch(format!(
            "pushout needs a span with one apex, got domains {} and {}",
            r.dom(),
            s.dom()
        )));
    }
    let (na, nc) = (r.cod(), s.cod());
    let mut parent: Vec<usize> = (0..na + nc).collect();
    for b in 0..r.dom() {
        let x = find(&mut parent, r.apply(b));
        let y = find(&mut parent, na + s.apply(b));
        // keep the smaller index as root so roots are least representatives
        let (lo, hi) = if x < y { (x, y) } else { (y, x) };
        parent[hi] = lo;
    }
    let roots: Vec<usize> = (0..na + nc).map(|x| find(&mut parent, x)).collect();
    let mut reps: Vec<usize> = roots.clone();
    reps.sort_unstable();
    reps.dedup();
    let class_of = |x: usize| reps.binary_search(&roots[x]).expect("root is a representative");
    let classes = reps
        .iter()
        .map(|&x| if x < na { Side::Left(x) } else { Side::Right(x - na) })
        .collect();
    let i1 = FinMap::from_table_unchecked(reps.len(), (0..na).map(class_of).collect());
    let i2 = FinMap::from_table_unchecked(reps.len(), (0..nc).map(|c| class_of(na + c)).collect());
    Ok(Pushout { classes, i1, i2 })
}

/// The canonical map `A +_B C -> A x_B C` induced by `(e1, e2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoproductComparison {
    pub pushout: Pushout,
    pub comparison: FinMap,
    pub injective: bool,
    pub surjective: bool,
}

impl CoproductComparison {
    pub fn is_bijection(&self) -> bool {
        self.injective && self.surjective
    }
}

pub fn local_coproduct_compare(lp: &LocalProduct) -> Result<CoproductComparison> {
    let pushout = pushout_split_mono(&lp.source.r, &lp.source.s)?;
    let mut table = vec![None; pushout.size()];
    for a in 0..lp.e1.dom() {
        table[pushout.i1.apply(a)] = Some(lp.e1.apply(a));
    }
    for c in 0..lp.e2.dom() {
        let k = pushout.i2.apply(c);
        match table[k] {
            Some(x) if x != lp.e2.apply(c) => {
                return Err(Error::CompatibilityViolation(format!(
                    "e1 and e2 disagree on pushout class {k}"
                )))
            }
            _ => table[k] = Some(lp.e2.apply(c)),
        }
    }
    let table: Vec<usize> = table.into_iter().map(|x| x.expect("every class has a member")).collect();
    let comparison = FinMap::from_table_unchecked(lp.size(), table);
    Ok(CoproductComparison {
        injective: comparison.is_mono(),
        surjective: comparison.is_epi(),
        comparison,
        pushout,
    })
}

/// Classes of spans used to relativise the Mal'tsev-type conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum SpanClass {
    /// All spans (kernel pairs always exist in finite sets).
    M0,
    /// Jointly monic spans.
    #[default]
    M1,
    /// Jointly strongly monic spans; every mono of finite sets is strong, so
    /// this coincides with `M1` here.
    M2,
}

impl SpanClass {
    pub fn contains(self, span: &Span) -> Result<Verdict> {
        Ok(match self {
            SpanClass::M0 => Verdict::Holds,
            SpanClass::M1 | SpanClass::M2 => Verdict::from_witness(
                "(d, c) jointly monic",
                jointly_monic_witness(&span.d, &span.c)?,
            ),
        })
    }
}

/// Enumerates every `m: E -> D` with `d m = d gamma p2`, `c m = c alpha p1`,
/// `m e1 = alpha` and `m e2 = gamma`, after checking class membership of the
/// span and the compatibility `d alpha = d gamma p2 e1`, `c gamma = c alpha p1 e2`.
pub fn extremal_instance_check(
    lp: &LocalProduct,
    span: &Span,
    alpha: &FinMap,
    gamma: &FinMap,
    class: SpanClass,
    cap: usize,
) -> Result<Solutions> {
    let n_d = span.apex();
    if alpha.dom() != lp.e1.dom() || gamma.dom() != lp.e2.dom() || alpha.cod() != n_d || gamma.cod() != n_d {
        return Err(Error::DomainMismatch("alpha: A -> D and gamma: C -> D expected".into()));
    }
    if let Verdict::Fails(v) = class.contains(span)? {
        return Err(Error::CompatibilityViolation(format!(
            "span is not in class {class:?}: elements {} are identified",
            v.witness
        )));
    }
    let (d, c) = (&span.d, &span.c);
    let d_alpha = compose(d, alpha)?;
    let d_gamma_p2_e1 = compose_all(&[d, gamma, lp.p2(), &lp.e1])?;
    if let Some(a) = d_alpha.first_difference(&d_gamma_p2_e1) {
        return Err(Error::CompatibilityViolation(format!("d alpha = d gamma p2 e1 fails at {a}")));
    }
    let c_gamma = compose(c, gamma)?;
    let c_alpha_p1_e2 = compose_all(&[c, alpha, lp.p1(), &lp.e2])?;
    if let Some(x) = c_gamma.first_difference(&c_alpha_p1_e2) {
        return Err(Error::CompatibilityViolation(format!("c gamma = c alpha p1 e2 fails at {x}")));
    }
    let mut cons = PointwiseConstraints::new(lp.size(), n_d);
    let d_target = compose_all(&[d, gamma, lp.p2()])?;
    let c_target = compose_all(&[c, alpha, lp.p1()])?;
    for x in 0..lp.size() {
        cons.require_leg(x, d, d_target.apply(x));
        cons.require_leg(x, c, c_target.apply(x));
    }
    for a in 0..alpha.dom() {
        cons.fix(lp.e1.apply(a), alpha.apply(a));
    }
    for k in 0..gamma.dom() {
        cons.fix(lp.e2.apply(k), gamma.apply(k));
    }
    Ok(cons.solve(cap))
}
