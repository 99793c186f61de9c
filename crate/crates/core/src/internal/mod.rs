//! Internal categorical structures in finite sets: spans, reflexive graphs,
//! (unital) multiplicative graphs, categories, groupoids, pregroupoids and
//! directed kites.
//!
//! Composable pairs `C2` are the pairs `(x, y)` with `d(x) = c(y)`, so
//! `m(x, y)` is "`x` after `y`": `d m = d pi2` and `c m = c pi1`.

mod kites;
mod kpc;
mod pregroupoid;

pub use kites::{
    compat_check, induced_kite, kite_from_cat, kite_from_rg, kite_from_rg_morphism, kite_from_span,
    kite_from_umg, DirectedKite, KiteMorphism, RgMorphism,
};
pub use kpc::{kpc, kpc_swapped, KernelPairConstruction};
pub use pregroupoid::{pregroupoid_associative, pregroupoid_structures, validate_pregroupoid, Pregroupoid};

use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finmap::{compose, FinMap};
use crate::limits::{kernel_pair, pullback, Pullback};
use crate::report::{Detail, Report, Verdict};
use crate::search::{PointwiseConstraints, Solutions};

/// A span `D0 <-d- D -c-> D1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct Span {
    pub d: FinMap,
    pub c: FinMap,
}

impl Span {
    pub fn new(d: FinMap, c: FinMap) -> Result<Self> {
        if d.dom() != c.dom() {
            return Err(Error::DomainMismatch(format!(
                "span legs need a common apex, got {} and {}",
                d.dom(),
                c.dom()
            )));
        }
        Ok(Span { d, c })
    }

    pub fn apex(&self) -> usize {
        self.d.dom()
    }

    /// The same span with its legs exchanged.
    pub fn swapped(&self) -> Span {
        Span { d: self.c.clone(), c: self.d.clone() }
    }

    pub fn is_relation(&self) -> bool {
        crate::finmap::jointly_monic(&self.d, &self.c).expect("legs share the apex")
    }
}

/// `C1 =d,c=> C0` with common section `e`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct ReflexiveGraph {
    pub d: FinMap,
    pub c: FinMap,
    pub e: FinMap,
}

impl ReflexiveGraph {
    /// Builds the graph after checking the typing; the equations are checked by
    /// [`ReflexiveGraph::check`].
    pub fn new(d: FinMap, c: FinMap, e: FinMap) -> Result<Self> {
        let g = ReflexiveGraph { d, c, e };
        g.check_typing()?;
        Ok(g)
    }

    fn check_typing(&self) -> Result<()> {
        let ok = self.d.dom() == self.c.dom()
            && self.d.cod() == self.c.cod()
            && self.e.dom() == self.d.cod()
            && self.e.cod() == self.d.dom();
        if ok {
            Ok(())
        } else {
            Err(Error::DomainMismatch(format!(
                "reflexive graph needs d, c: C1 -> C0 and e: C0 -> C1; got d {:?}, c {:?}, e {:?}",
                self.d, self.c, self.e
            )))
        }
    }

    pub fn arrows(&self) -> usize {
        self.d.dom()
    }

    pub fn objects(&self) -> usize {
        self.d.cod()
    }

    pub fn span(&self) -> Span {
        Span { d: self.d.clone(), c: self.c.clone() }
    }

    pub fn check(&self) -> Vec<Detail> {
        let de = compose(&self.d, &self.e).expect("typed");
        let ce = compose(&self.c, &self.e).expect("typed");
        vec![
            Detail::new("d e = 1", Verdict::from_witness("d e = 1", (0..de.dom()).find(|&x| de.apply(x) != x))),
            Detail::new("c e = 1", Verdict::from_witness("c e = 1", (0..ce.dom()).find(|&x| ce.apply(x) != x))),
        ]
    }

    /// Composable pairs `(x, y)` with `d(x) = c(y)`.
    pub fn composable(&self) -> Pullback {
        pullback(&self.d, &self.c).expect("d and c share C0")
    }

    /// `e1 = <1, e d>` and `e2 = <e c, 1>` into the composable pairs.
    pub fn unit_injections(&self, pairs: &Pullback) -> Result<(FinMap, FinMap)> {
        let id = FinMap::identity(self.arrows());
        let e1 = pairs.pair(&id, &compose(&self.e, &self.d)?)?;
        let e2 = pairs.pair(&compose(&self.e, &self.c)?, &id)?;
        Ok((e1, e2))
    }

    /// Every unital multiplication `m: C2 -> C1`, i.e. with `m e1 = m e2 = 1`,
    /// `d m = d pi2`, `c m = c pi1`.
    pub fn unital_multiplications(&self, cap: usize) -> Result<Solutions> {
        let pairs = self.composable();
        let (e1, e2) = self.unit_injections(&pairs)?;
        let mut cons = PointwiseConstraints::new(pairs.size(), self.arrows());
        for (k, &(x, y)) in pairs.labels.iter().enumerate() {
            cons.require_leg(k, &self.d, self.d.apply(y));
            cons.require_leg(k, &self.c, self.c.apply(x));
        }
        for x in 0..self.arrows() {
            cons.fix(e1.apply(x), x);
            cons.fix(e2.apply(x), x);
        }
        Ok(cons.solve(cap))
    }
}

/// A reflexive graph with a multiplication on composable pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicativeGraph {
    pub graph: ReflexiveGraph,
    pub pairs: Pullback,
    pub e1: FinMap,
    pub e2: FinMap,
    pub m: FinMap,
}

impl MultiplicativeGraph {
    /// `m` is indexed by the composable pairs in lexicographic order.
    pub fn new(graph: ReflexiveGraph, m: FinMap) -> Result<Self> {
        let pairs = graph.composable();
        if m.dom() != pairs.size() || m.cod() != graph.arrows() {
            return Err(Error::DomainMismatch(format!(
                "multiplication must map the {} composable pairs to the {} arrows, got {:?}",
                pairs.size(),
                graph.arrows(),
                m
            )));
        }
        let (e1, e2) = graph.unit_injections(&pairs)?;
        Ok(MultiplicativeGraph { graph, pairs, e1, e2, m })
    }

    /// The one-object category of a monoid with multiplication table `table`
    /// (row-major, `table[x * n + y] = x y`) and unit `unit`.
    pub fn from_monoid(n: usize, table: &[usize], unit: usize) -> Result<Self> {
        let graph = ReflexiveGraph::new(
            FinMap::to_terminal(n),
            FinMap::to_terminal(n),
            FinMap::new(n, vec![unit])?,
        )?;
        MultiplicativeGraph::new(graph, FinMap::with_dom(n * n, n, table.to_vec())?)
    }

    fn label(&self, k: usize) -> [usize; 2] {
        let (x, y) = self.pairs.labels[k];
        [x, y]
    }

    /// The reflexive-graph laws plus `d m = d pi2`, `c m = c pi1`.
    pub fn check_multiplicative(&self) -> Vec<Detail> {
        let mut out = self.graph.check();
        let g = &self.graph;
        let w = (0..self.pairs.size()).find(|&k| g.d.apply(self.m.apply(k)) != g.d.apply(self.pairs.p2.apply(k)));
        out.push(Detail::new("d m = d pi2", Verdict::from_witness("d m = d pi2", w.map(|k| self.label(k)))));
        let w = (0..self.pairs.size()).find(|&k| g.c.apply(self.m.apply(k)) != g.c.apply(self.pairs.p1.apply(k)));
        out.push(Detail::new("c m = c pi1", Verdict::from_witness("c m = c pi1", w.map(|k| self.label(k)))));
        out
    }

    pub fn check_unital(&self) -> Vec<Detail> {
        let mut out = self.check_multiplicative();
        let me1 = compose(&self.m, &self.e1).expect("typed");
        let me2 = compose(&self.m, &self.e2).expect("typed");
        out.push(Detail::new("m e1 = 1", Verdict::from_witness("m e1 = 1", (0..me1.dom()).find(|&x| me1.apply(x) != x))));
        out.push(Detail::new("m e2 = 1", Verdict::from_witness("m e2 = 1", (0..me2.dom()).find(|&x| me2.apply(x) != x))));
        out
    }

    /// Composable triples `(x, y, z)` as pairs of composable pairs.
    pub fn triples(&self) -> Pullback {
        pullback(&self.pairs.p2, &self.pairs.p1).expect("both legs land in C1")
    }

    /// `m (1 x m) = m (m x 1)` over all composable triples.
    pub fn associativity(&self) -> Verdict {
        let t = self.triples();
        let first = |k: usize| self.pairs.labels[t.labels[k].0];
        let second = |k: usize| self.pairs.labels[t.labels[k].1];
        for k in 0..t.size() {
            let (x, y) = first(k);
            let z = second(k).1;
            let mul = |a: usize, b: usize| self.pairs.index_of(a, b).map(|i| self.m.apply(i));
            let right = mul(y, z).and_then(|yz| mul(x, yz));
            let left = mul(x, y).and_then(|xy| mul(xy, z));
            if left.is_none() || left != right {
                return Verdict::fails("m(1 x m) = m(m x 1)", [x, y, z]);
            }
        }
        Verdict::Holds
    }

    /// Whether `(x, y) -> (y, m(x, y))` is a bijection onto the kernel pair of
    /// `d`, i.e. the square `d m = d pi2` is a pullback.
    pub fn groupoid_square(&self) -> Verdict {
        let ker = kernel_pair(&self.graph.d);
        let mut hit = vec![None; ker.size()];
        for k in 0..self.pairs.size() {
            let y = self.pairs.p2.apply(k);
            let xy = self.m.apply(k);
            match ker.pairs.index_of(y, xy) {
                None => return Verdict::fails("d m = d pi2", self.label(k)),
                Some(i) => {
                    if let Some(prev) = hit[i].replace(k) {
                        return Verdict::fails("(pi2, m) injective", [self.label(prev), self.label(k)]);
                    }
                }
            }
        }
        match hit.iter().position(Option::is_none) {
            None => Verdict::Holds,
            Some(i) => {
                let (y, z) = ker.labels()[i];
                Verdict::fails("(pi2, m) surjective onto the kernel pair of d", [y, z])
            }
        }
    }
}

pub fn validate_reflexive_graph(g: &ReflexiveGraph) -> Report {
    Report::from_details("validate reflexive_graph", g.check())
}

pub fn validate_multiplicative_graph(g: &MultiplicativeGraph) -> Report {
    Report::from_details("validate multiplicative_graph", g.check_multiplicative())
}

pub fn validate_unital_multiplicative_graph(g: &MultiplicativeGraph) -> Report {
    Report::from_details("validate unital_multiplicative_graph", g.check_unital())
}

pub fn validate_category(g: &MultiplicativeGraph) -> Report {
    let mut details = g.check_unital();
    details.push(Detail::new("associativity", g.associativity()));
    Report::from_details("validate category", details)
}

pub fn validate_groupoid(g: &MultiplicativeGraph) -> Report {
    let mut details = g.check_unital();
    details.push(Detail::new("associativity", g.associativity()));
    details.push(Detail::new("groupoid square is a pullback", g.groupoid_square()));
    Report::from_details("validate groupoid", details)
}
