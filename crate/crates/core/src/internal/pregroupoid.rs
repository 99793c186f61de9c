//! Pregroupoids: spans with a partial Mal'tsev operation on `D(d, c)`.

use crate::error::{Error, Result};
use crate::finmap::FinMap;
use crate::report::{Detail, Report, Verdict};
use crate::search::{PointwiseConstraints, Solutions};

use super::kpc::{kpc, KernelPairConstruction};
use super::Span;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pregroupoid {
    pub span: Span,
    pub triples: KernelPairConstruction,
    /// Indexed by the triples of `D(d, c)` in lexicographic order.
    pub p: FinMap,
}

impl Pregroupoid {
    pub fn new(span: Span, p: FinMap) -> Result<Self> {
        let triples = kpc(&span);
        if p.dom() != triples.size() || p.cod() != span.apex() {
            return Err(Error::DomainMismatch(format!(
                "p must map the {} triples of D(d,c) to the {} elements of D, got {:?}",
                triples.size(),
                span.apex(),
                p
            )));
        }
        Ok(Pregroupoid { span, triples, p })
    }

    /// Builds `p` from a total ternary function on `D`.
    pub fn from_fn(span: Span, f: impl Fn(usize, usize, usize) -> usize) -> Result<Self> {
        let triples = kpc(&span);
        let table = triples.labels.iter().map(|&(x, y, z)| f(x, y, z)).collect();
        let p = FinMap::new(span.apex(), table)?;
        Pregroupoid::new(span, p)
    }

    pub fn apply(&self, x: usize, y: usize, z: usize) -> Option<usize> {
        self.triples.index_of(x, y, z).map(|i| self.p.apply(i))
    }

    pub fn check(&self) -> Vec<Detail> {
        let (d, c) = (&self.span.d, &self.span.c);
        let t = &self.triples.labels;
        let at = |i: usize| [t[i].0, t[i].1, t[i].2];
        let find = |pred: &dyn Fn(usize) -> bool| (0..t.len()).find(|&i| pred(i)).map(at);
        let p = |i: usize| self.p.apply(i);
        vec![
            Detail::new("p(x,y,y) = x", Verdict::from_witness("p(x,y,y) = x", find(&|i| t[i].1 == t[i].2 && p(i) != t[i].0))),
            Detail::new("p(y,y,z) = z", Verdict::from_witness("p(y,y,z) = z", find(&|i| t[i].0 == t[i].1 && p(i) != t[i].2))),
            Detail::new("d p(x,y,z) = d z", Verdict::from_witness("d p(x,y,z) = d z", find(&|i| d.apply(p(i)) != d.apply(t[i].2)))),
            Detail::new("c p(x,y,z) = c x", Verdict::from_witness("c p(x,y,z) = c x", find(&|i| c.apply(p(i)) != c.apply(t[i].0)))),
        ]
    }

    /// `p(p(x,y,z),u,v) = p(x,y,p(z,u,v))` over all quintuples with
    /// `(x,y,z)` and `(z,u,v)` in `D(d, c)`.
    pub fn associative(&self) -> Verdict {
        let t = &self.triples.labels;
        for (i, &(x, y, z)) in t.iter().enumerate() {
            let lo = t.partition_point(|l| l.0 < z);
            for (j, &(_, u, v)) in t[lo..].iter().enumerate().take_while(|(_, l)| l.0 == z) {
                let left = self.apply(self.p.apply(i), u, v);
                let right = self.apply(x, y, self.p.apply(lo + j));
                if left.is_none() || left != right {
                    return Verdict::fails("p(p(x,y,z),u,v) = p(x,y,p(z,u,v))", [x, y, z, u, v]);
                }
            }
        }
        Verdict::Holds
    }
}

pub fn validate_pregroupoid(pg: &Pregroupoid) -> Report {
    Report::from_details("validate pregroupoid", pg.check())
}

pub fn pregroupoid_associative(pg: &Pregroupoid) -> Verdict {
    pg.associative()
}

/// Every pregroupoid structure on `span`, in lexicographic order of tables.
pub fn pregroupoid_structures(span: &Span, cap: usize) -> Solutions {
    let k = kpc(span);
    let mut cons = PointwiseConstraints::new(k.size(), span.apex());
    for (i, &(x, y, z)) in k.labels.iter().enumerate() {
        if y == z {
            cons.fix(i, x);
        }
        if x == y {
            cons.fix(i, z);
        }
        cons.require_leg(i, &span.d, span.d.apply(z));
        cons.require_leg(i, &span.c, span.c.apply(x));
    }
    cons.solve(cap)
}
