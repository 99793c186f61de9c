//! The kernel pair construction `K(D, d, c)`.

use crate::finmap::{compose, FinMap};
use crate::limits::{kernel_pair, local_product, KernelPair, LocalProduct, SplitCospan};
use crate::report::{Detail, Verdict};

use super::{ReflexiveGraph, Span};

/// `D(d, c)` with the eight auxiliary maps and the reflexive graph
/// `(D(d, c), D, dom, Delta, cod)`.
///
/// `D(d)` holds pairs `(x, y)` with `d(x) = d(y)`, `D(c)` pairs `(y, z)` with
/// `c(y) = c(z)`, and `D(d, c)` is their local product over `D`, i.e. the
/// triples `(x, y, z)` in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelPairConstruction {
    pub span: Span,
    /// Built from the exchanged span `(D, c, d)`, with `dom` and `cod` read
    /// from the other end.
    pub swapped: bool,
    pub kd: KernelPair,
    pub kc: KernelPair,
    pub d1: FinMap,
    pub d2: FinMap,
    pub c1: FinMap,
    pub c2: FinMap,
    pub triples: LocalProduct,
    pub labels: Vec<(usize, usize, usize)>,
    pub p1: FinMap,
    pub p2: FinMap,
    pub e1: FinMap,
    pub e2: FinMap,
    pub dom: FinMap,
    pub mid: FinMap,
    pub cod: FinMap,
    /// `x -> (x, x, x)`.
    pub diagonal: FinMap,
}

/// `K(D, d, c)`.
pub fn kpc(span: &Span) -> KernelPairConstruction {
    build(span, false)
}

/// `K(D, c, d)`: triples `(x, y, z)` with `c(x) = c(y)`, `d(y) = d(z)`, and
/// `dom (x, y, z) = z`, `cod (x, y, z) = x`.
pub fn kpc_swapped(span: &Span) -> KernelPairConstruction {
    build(span, true)
}

fn build(span: &Span, swapped: bool) -> KernelPairConstruction {
    let (first, second) = if swapped { (&span.c, &span.d) } else { (&span.d, &span.c) };
    let kd = kernel_pair(first);
    let kc = kernel_pair(second);
    let d1 = kd.pairs.p1.clone();
    let d2 = kd.pairs.p2.clone();
    let c1 = kc.pairs.p1.clone();
    let c2 = kc.pairs.p2.clone();
    let cospan = SplitCospan { f: d2.clone(), r: kd.diagonal.clone(), g: c1.clone(), s: kc.diagonal.clone() };
    let triples = local_product(&cospan).expect("diagonals split both projections");
    let labels: Vec<(usize, usize, usize)> = triples
        .labels()
        .iter()
        .map(|&(a, b)| {
            let (x, y) = kd.labels()[a];
            let (_, z) = kc.labels()[b];
            (x, y, z)
        })
        .collect();
    let p1 = triples.p1().clone();
    let p2 = triples.p2().clone();
    let e1 = triples.e1.clone();
    let e2 = triples.e2.clone();
    let first_leg = compose(&d1, &p1).expect("typed");
    let last_leg = compose(&c2, &p2).expect("typed");
    let mid = compose(&d2, &p1).expect("typed");
    let (dom, cod) = if swapped { (last_leg, first_leg) } else { (first_leg, last_leg) };
    let diagonal = compose(&e1, &kd.diagonal).expect("typed");
    KernelPairConstruction {
        span: span.clone(),
        swapped,
        kd,
        kc,
        d1,
        d2,
        c1,
        c2,
        triples,
        labels,
        p1,
        p2,
        e1,
        e2,
        dom,
        mid,
        cod,
        diagonal,
    }
}

impl KernelPairConstruction {
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn index_of(&self, x: usize, y: usize, z: usize) -> Option<usize> {
        self.labels.binary_search(&(x, y, z)).ok()
    }

    pub fn graph(&self) -> ReflexiveGraph {
        ReflexiveGraph { d: self.dom.clone(), c: self.cod.clone(), e: self.diagonal.clone() }
    }

    /// The span `(D(d, c), dom, cod)`.
    pub fn span_of_triples(&self) -> Span {
        Span { d: self.dom.clone(), c: self.cod.clone() }
    }

    /// The set formulas for `d1, d2, c1, c2, Delta, p1, p2, e1, e2`, plus the
    /// triple-membership conditions and `dom`, `mid`, `cod`, checked pointwise
    /// against the label tables.
    pub fn check_formulas(&self) -> Vec<Detail> {
        let kd = self.kd.labels();
        let kc = self.kc.labels();
        let (first, second) = if self.swapped { (&self.span.c, &self.span.d) } else { (&self.span.d, &self.span.c) };
        let n = self.span.apex();
        let mut out = Vec::new();
        let mut push = |name: &str, w: Option<usize>| out.push(Detail::new(name, Verdict::from_witness(name, w)));

        push("d1(x,y) = x", (0..kd.len()).find(|&i| self.d1.apply(i) != kd[i].0));
        push("d2(x,y) = y", (0..kd.len()).find(|&i| self.d2.apply(i) != kd[i].1));
        push("c1(y,z) = y", (0..kc.len()).find(|&i| self.c1.apply(i) != kc[i].0));
        push("c2(y,z) = z", (0..kc.len()).find(|&i| self.c2.apply(i) != kc[i].1));
        push(
            "Delta(y) = (y,y)",
            (0..n).find(|&y| kd.get(self.kd.diagonal.apply(y)) != Some(&(y, y)) || kc.get(self.kc.diagonal.apply(y)) != Some(&(y, y))),
        );
        let t = &self.labels;
        push("p1(x,y,z) = (x,y)", (0..t.len()).find(|&i| kd[self.p1.apply(i)] != (t[i].0, t[i].1)));
        push("p2(x,y,z) = (y,z)", (0..t.len()).find(|&i| kc[self.p2.apply(i)] != (t[i].1, t[i].2)));
        push("e1(x,y) = (x,y,y)", (0..kd.len()).find(|&i| t[self.e1.apply(i)] != (kd[i].0, kd[i].1, kd[i].1)));
        push("e2(y,z) = (y,y,z)", (0..kc.len()).find(|&i| t[self.e2.apply(i)] != (kc[i].0, kc[i].0, kc[i].1)));
        push(
            "triples satisfy both kernel conditions",
            (0..t.len()).find(|&i| first.apply(t[i].0) != first.apply(t[i].1) || second.apply(t[i].1) != second.apply(t[i].2)),
        );
        let (dom_of, cod_of) = if self.swapped { (2, 0) } else { (0, 2) };
        let coord = |l: &(usize, usize, usize), i: usize| [l.0, l.1, l.2][i];
        push("dom", (0..t.len()).find(|&i| self.dom.apply(i) != coord(&t[i], dom_of)));
        push("mid", (0..t.len()).find(|&i| self.mid.apply(i) != t[i].1 || self.c1.apply(self.p2.apply(i)) != t[i].1));
        push("cod", (0..t.len()).find(|&i| self.cod.apply(i) != coord(&t[i], cod_of)));
        push("Delta(x) = (x,x,x)", (0..n).find(|&x| t.get(self.diagonal.apply(x)) != Some(&(x, x, x))));
        out
    }

    /// The triples, found by brute force over `D^3`.
    #[doc(hidden)]
    pub fn brute_force_labels(span: &Span, swapped: bool) -> Vec<(usize, usize, usize)> {
        let (a, b) = if swapped { (&span.c, &span.d) } else { (&span.d, &span.c) };
        let n = span.apex();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if a.apply(x) == a.apply(y) && b.apply(y) == b.apply(z) {
                        out.push((x, y, z));
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn span(d: FinMap, c: FinMap) -> Span {
        Span::new(d, c).unwrap()
    }

    #[test]
    fn identities_give_diagonal() {
        let k = kpc(&span(FinMap::identity(3), FinMap::identity(3)));
        assert_eq!(k.labels, vec![(0, 0, 0), (1, 1, 1), (2, 2, 2)]);
        assert!(k.check_formulas().iter().all(Detail::holds));
        assert!(kpc_swapped(&span(FinMap::identity(3), FinMap::identity(3))).size() == 3);
    }

    #[test]
    fn constant_d_identity_c() {
        let s = span(FinMap::to_terminal(2), FinMap::identity(2));
        let k = kpc(&s);
        assert_eq!(k.labels, vec![(0, 0, 0), (0, 1, 1), (1, 0, 0), (1, 1, 1)]);
        assert!(k.check_formulas().iter().all(Detail::holds));
        let ks = kpc_swapped(&s);
        assert_eq!(ks.labels, vec![(0, 0, 0), (0, 0, 1), (1, 1, 0), (1, 1, 1)]);
        assert!(ks.check_formulas().iter().all(Detail::holds));
        // dom (x, x, z) = z
        assert_eq!(ks.dom.table(), &[0, 1, 0, 1]);
        assert_eq!(ks.cod.table(), &[0, 0, 1, 1]);
    }

    #[test]
    fn group_span_gives_cube() {
        let s = span(FinMap::to_terminal(3), FinMap::to_terminal(3));
        let k = kpc(&s);
        assert_eq!(k.size(), 27);
        assert_eq!(k.labels, KernelPairConstruction::brute_force_labels(&s, false));
        assert_eq!(kpc_swapped(&s).size(), 27);
    }

    #[test]
    fn graph_is_reflexive() {
        let s = span(FinMap::new(2, vec![0, 1, 1]).unwrap(), FinMap::new(2, vec![0, 0, 1]).unwrap());
        for k in [kpc(&s), kpc_swapped(&s)] {
            assert!(k.graph().check().iter().all(Detail::holds));
            assert!(k.check_formulas().iter().all(Detail::holds));
        }
    }
}
