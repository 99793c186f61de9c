//! Compatible binary relations on a finite algebra.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::Verdict;

use super::OpAlgebra;

/// A relation on `{0, .., size-1}` as a membership matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryRelation {
    size: usize,
    bits: Vec<bool>,
}

impl Serialize for BinaryRelation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.pairs().serialize(s)
    }
}

impl BinaryRelation {
    pub fn empty(size: usize) -> Self {
        BinaryRelation { size, bits: vec![false; size * size] }
    }

    pub fn diagonal(size: usize) -> Self {
        let mut r = BinaryRelation::empty(size);
        for x in 0..size {
            r.insert(x, x);
        }
        r
    }

    pub fn from_pairs(size: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut r = BinaryRelation::empty(size);
        for &(a, b) in pairs {
            if a >= size || b >= size {
                return Err(Error::InvalidStructure(format!("pair ({a}, {b}) is outside a carrier of size {size}")));
            }
            r.insert(a, b);
        }
        Ok(r)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.size + b]
    }

    fn insert(&mut self, a: usize, b: usize) -> bool {
        let slot = &mut self.bits[a * self.size + b];
        !std::mem::replace(slot, true)
    }

    /// Pairs in lexicographic order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.bits.len()).filter(|&i| self.bits[i]).map(|i| (i / self.size, i % self.size)).collect()
    }

    pub fn len(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The least relation containing `self` closed under every operation of
    /// `alg` applied coordinatewise.
    pub fn closure(&self, alg: &OpAlgebra) -> BinaryRelation {
        let n = self.size;
        let mut r = self.clone();
        loop {
            let pairs = r.pairs();
            let mut grew = false;
            for op in alg.ops() {
                let k = op.arity;
                let total = pairs.len().pow(k as u32);
                let mut left = vec![0; k];
                let mut right = vec![0; k];
                for mut code in 0..total {
                    for slot in (0..k).rev() {
                        let (a, b) = pairs[code % pairs.len()];
                        code /= pairs.len();
                        left[slot] = a;
                        right[slot] = b;
                    }
                    grew |= r.insert(op.eval(n, &left), op.eval(n, &right));
                }
            }
            if !grew {
                return r;
            }
        }
    }

    pub fn is_compatible(&self, alg: &OpAlgebra) -> bool {
        self.closure(alg) == *self
    }
}

/// Outcome of [`reflexive_relations`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationEnumeration {
    pub relations: Vec<BinaryRelation>,
    /// `false` when the budget ran out; `relations` is then partial.
    pub complete: bool,
    pub budget: usize,
}

impl RelationEnumeration {
    pub fn into_result(self) -> Result<Vec<BinaryRelation>> {
        if self.complete {
            Ok(self.relations)
        } else {
            Err(Error::BudgetExceeded { budget: self.budget })
        }
    }
}

/// Every compatible reflexive relation of `alg`, sorted by pair list.
///
/// Breadth-first from the closure of the diagonal, adding one pair at a time
/// and closing; every compatible reflexive relation is reached because it is
/// the union of such closures. Stops after `budget` distinct relations.
pub fn reflexive_relations(alg: &OpAlgebra, budget: usize) -> RelationEnumeration {
    let n = alg.size();
    let start = BinaryRelation::diagonal(n).closure(alg);
    let mut seen: HashSet<BinaryRelation> = HashSet::new();
    let mut queue = VecDeque::new();
    let mut complete = true;
    seen.insert(start.clone());
    queue.push_back(start);
    'search: while let Some(r) = queue.pop_front() {
        for i in 0..n * n {
            if r.bits[i] {
                continue;
            }
            let mut bigger = r.clone();
            bigger.bits[i] = true;
            let closed = bigger.closure(alg);
            if !seen.contains(&closed) {
                if seen.len() >= budget {
                    complete = false;
                    break 'search;
                }
                seen.insert(closed.clone());
                queue.push_back(closed);
            }
        }
    }
    let mut relations: Vec<BinaryRelation> = seen.into_iter().collect();
    relations.sort_by_key(|r| r.pairs());
    RelationEnumeration { relations, complete, budget }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationProperties {
    pub reflexive: Verdict,
    pub symmetric: Verdict,
    pub transitive: Verdict,
    /// `a R b`, `c R b`, `c R d` imply `a R d`.
    pub difunctional: Verdict,
}

pub fn relation_properties(r: &BinaryRelation) -> RelationProperties {
    let n = r.size;
    let pairs = r.pairs();
    let reflexive = Verdict::from_witness("x R x", (0..n).find(|&x| !r.contains(x, x)));
    let symmetric = Verdict::from_witness("a R b implies b R a", pairs.iter().find(|&&(a, b)| !r.contains(b, a)).map(|&(a, b)| [a, b]));
    let mut transitive = None;
    'outer: for &(a, b) in &pairs {
        for c in 0..n {
            if r.contains(b, c) && !r.contains(a, c) {
                transitive = Some([a, b, c]);
                break 'outer;
            }
        }
    }
    let mut difunctional = None;
    'outer2: for &(a, b) in &pairs {
        for &(c, b2) in &pairs {
            if b2 != b {
                continue;
            }
            for d in 0..n {
                if r.contains(c, d) && !r.contains(a, d) {
                    difunctional = Some([a, b, c, d]);
                    break 'outer2;
                }
            }
        }
    }
    RelationProperties {
        reflexive,
        symmetric,
        transitive: Verdict::from_witness("a R b, b R c imply a R c", transitive),
        difunctional: Verdict::from_witness("a R b, c R b, c R d imply a R d", difunctional),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{zn, Variety};

    fn bare(n: usize) -> OpAlgebra {
        OpAlgebra::new(n, Variety::Custom, vec![]).unwrap()
    }

    #[test]
    fn empty_signature_on_two_elements() {
        let all = reflexive_relations(&bare(2), 100);
        assert!(all.complete);
        assert_eq!(all.relations.len(), 4);
        let up = BinaryRelation::from_pairs(2, &[(0, 0), (0, 1), (1, 1)]).unwrap();
        assert!(all.relations.contains(&up));
        let p = relation_properties(&up);
        assert!(p.reflexive.holds() && p.transitive.holds());
        assert!(!p.symmetric.holds());
        assert!(!p.difunctional.holds());
    }

    #[test]
    fn groups_have_symmetric_relations() {
        for n in 1..=4 {
            let rels = reflexive_relations(&zn(n), 1000).into_result().unwrap();
            for r in &rels {
                let p = relation_properties(r);
                assert!(p.symmetric.holds() && p.transitive.holds() && p.difunctional.holds());
            }
        }
        // congruences of Z_4 correspond to its three subgroups
        assert_eq!(reflexive_relations(&zn(4), 1000).relations.len(), 3);
    }

    #[test]
    fn diagonal_properties() {
        let p = relation_properties(&BinaryRelation::diagonal(3));
        assert!(p.symmetric.holds() && p.transitive.holds() && p.difunctional.holds());
    }

    #[test]
    fn budget_is_reported() {
        let e = reflexive_relations(&bare(3), 5);
        assert!(!e.complete);
        assert_eq!(e.relations.len(), 5);
        assert_eq!(e.into_result(), Err(Error::BudgetExceeded { budget: 5 }));
    }
}
