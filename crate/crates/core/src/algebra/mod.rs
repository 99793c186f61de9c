//! Finite algebras given by operation tables, the equational criteria for
//! weakly Mal'tsev objects, Mal'tsev-operation solving, compatible relations
//! and admissibility counts inside a variety.
//!
//! Conventions on which operation plays which role:
//! - `magma`, `cmag`, `ccm_magma`, `csemigroup`: the first binary operation;
//! - `dimagma`, `lattice`: the first two binary operations (meet, then join);
//! - `unary_monoid`: the first binary (product), nullary (unit) and unary (bar)
//!   operations; `group` reads the inverse as the bar.

mod catalog;
mod maltsev;
mod relations;
mod variety_kite;

pub use catalog::{
    chain, commutative_magmas, group_from_monoid, lattice_from_order, m3, monoids, n5, standard_lattices, two_by_two,
    two_by_two_with_bottom, two_by_two_with_top, unary_monoid_from_group, zn, zn_magma,
};
pub use maltsev::{check_naturality_of_p, maltsev_solve, maltsev_table, MaltsevTable};
pub use relations::{reflexive_relations, relation_properties, BinaryRelation, RelationEnumeration, RelationProperties};
pub use variety_kite::{admissibility_count_variety, find_witness_kite, VarietyKite, WitnessSearch};

use std::fmt;
use std::str::FromStr;

use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{Detail, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "snake_case")]
pub enum Variety {
    Magma,
    Cmag,
    Dimagma,
    UnaryMonoid,
    Lattice,
    CcmMagma,
    Group,
    Csemigroup,
    Custom,
}

impl Variety {
    pub const ALL: [Variety; 9] = [
        Variety::Magma,
        Variety::Cmag,
        Variety::Dimagma,
        Variety::UnaryMonoid,
        Variety::Lattice,
        Variety::CcmMagma,
        Variety::Group,
        Variety::Csemigroup,
        Variety::Custom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variety::Magma => "magma",
            Variety::Cmag => "cmag",
            Variety::Dimagma => "dimagma",
            Variety::UnaryMonoid => "unary_monoid",
            Variety::Lattice => "lattice",
            Variety::CcmMagma => "ccm_magma",
            Variety::Group => "group",
            Variety::Csemigroup => "csemigroup",
            Variety::Custom => "custom",
        }
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variety {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Variety::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::UnsupportedVariety(s.to_string()))
    }
}

/// A total operation; `table` is indexed lexicographically by argument tuples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct Operation {
    pub symbol: String,
    pub arity: usize,
    pub table: Vec<usize>,
}

impl Operation {
    pub fn new(symbol: impl Into<String>, arity: usize, table: Vec<usize>) -> Self {
        Operation { symbol: symbol.into(), arity, table }
    }

    pub fn from_fn(symbol: impl Into<String>, n: usize, arity: usize, f: impl Fn(&[usize]) -> usize) -> Self {
        let len = n.pow(arity as u32);
        let mut args = vec![0; arity];
        let table = (0..len)
            .map(|mut i| {
                for slot in args.iter_mut().rev() {
                    *slot = i % n;
                    i /= n;
                }
                f(&args)
            })
            .collect();
        Operation::new(symbol, arity, table)
    }

    pub fn binary(symbol: impl Into<String>, n: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        Operation::from_fn(symbol, n, 2, |a| f(a[0], a[1]))
    }

    /// Evaluates at `args`; `n` is the carrier size.
    pub fn eval(&self, n: usize, args: &[usize]) -> usize {
        debug_assert_eq!(args.len(), self.arity);
        self.table[args.iter().fold(0, |i, &a| i * n + a)]
    }

    pub fn eval2(&self, n: usize, x: usize, y: usize) -> usize {
        self.table[x * n + y]
    }
}

/// A finite algebra on `{0, .., size-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "crate::format::AlgebraFile", into = "crate::format::AlgebraFile")]
pub struct OpAlgebra {
    size: usize,
    variety: Variety,
    ops: Vec<Operation>,
}

impl OpAlgebra {
    /// Checks table shapes and entries, then the axioms of `variety`.
    pub fn new(size: usize, variety: Variety, ops: Vec<Operation>) -> Result<Self> {
        for (k, op) in ops.iter().enumerate() {
            let want = size.checked_pow(op.arity as u32).ok_or_else(|| {
                Error::InvalidAlgebra(format!("ops[{k}] ({}) is too large", op.symbol))
            })?;
            if op.table.len() != want {
                return Err(Error::InvalidAlgebra(format!(
                    "ops[{k}] ({}): table has {} entries, expected {size}^{} = {want}",
                    op.symbol,
                    op.table.len(),
                    op.arity
                )));
            }
            if let Some(i) = op.table.iter().position(|&v| v >= size) {
                return Err(Error::InvalidAlgebra(format!(
                    "ops[{k}] ({}): table[{i}] = {} is not below size {size}",
                    op.symbol, op.table[i]
                )));
            }
        }
        let a = OpAlgebra { size, variety, ops };
        if let Some(v) = crate::report::first_failure(&a.variety_axioms()?) {
            return Err(Error::InvalidAlgebra(format!(
                "not a {variety}: {} fails at {}",
                v.condition, v.witness
            )));
        }
        Ok(a)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn variety(&self) -> Variety {
        self.variety
    }

    pub fn ops(&self) -> &[Operation] {
        &self.ops
    }

    /// The same tables under another variety tag, re-validated.
    pub fn with_variety(&self, variety: Variety) -> Result<Self> {
        OpAlgebra::new(self.size, variety, self.ops.clone())
    }

    pub fn op(&self, symbol: &str) -> Option<&Operation> {
        self.ops.iter().find(|o| o.symbol == symbol)
    }

    fn nth_of_arity(&self, arity: usize, nth: usize) -> Option<&Operation> {
        self.ops.iter().filter(|o| o.arity == arity).nth(nth)
    }

    /// The first binary operation.
    pub fn mul(&self) -> Result<&Operation> {
        self.nth_of_arity(2, 0).ok_or_else(|| Error::MissingOperation("a binary operation".into()))
    }

    /// The first two binary operations.
    pub fn two_binary(&self) -> Result<(&Operation, &Operation)> {
        match (self.nth_of_arity(2, 0), self.nth_of_arity(2, 1)) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(Error::MissingOperation("two binary operations".into())),
        }
    }

    /// Product, unit and bar of a unary monoid.
    pub fn unary_monoid_ops(&self) -> Result<(&Operation, usize, &Operation)> {
        let mul = self.mul()?;
        let unit = self
            .nth_of_arity(0, 0)
            .ok_or_else(|| Error::MissingOperation("a constant (unit)".into()))?;
        let bar = self
            .nth_of_arity(1, 0)
            .ok_or_else(|| Error::MissingOperation("a unary operation (bar)".into()))?;
        Ok((mul, unit.table[0], bar))
    }

    fn variety_axioms(&self) -> Result<Vec<Detail>> {
        let n = self.size;
        let d = |name: &str, v: Verdict| Detail::new(name, v);
        Ok(match self.variety {
            Variety::Magma | Variety::Custom => Vec::new(),
            Variety::Cmag => vec![d("commutative", commutative(n, self.mul()?))],
            Variety::Csemigroup => vec![
                d("commutative", commutative(n, self.mul()?)),
                d("associative", associative(n, self.mul()?)),
            ],
            Variety::CcmMagma => vec![
                d("commutative", commutative(n, self.mul()?)),
                d("medial", medial(n, self.mul()?)),
                d("cancellative", cancellative(n, self.mul()?)),
            ],
            Variety::Dimagma => {
                let (a, b) = self.two_binary()?;
                vec![d("first operation commutative", commutative(n, a)), d("second operation commutative", commutative(n, b))]
            }
            Variety::Lattice => {
                let (meet, join) = self.two_binary()?;
                vec![
                    d("meet commutative", commutative(n, meet)),
                    d("join commutative", commutative(n, join)),
                    d("meet associative", associative(n, meet)),
                    d("join associative", associative(n, join)),
                    d("meet idempotent", idempotent(n, meet)),
                    d("join idempotent", idempotent(n, join)),
                    d("absorption", absorption(n, meet, join)),
                ]
            }
            Variety::UnaryMonoid => {
                let (mul, unit, bar) = self.unary_monoid_ops()?;
                vec![
                    d("associative", associative(n, mul)),
                    d("unit", unit_law(n, mul, unit)),
                    d("x bar(y) y = y bar(y) x", unary_monoid_law(n, mul, bar)),
                ]
            }
            Variety::Group => {
                let (mul, unit, inv) = self.unary_monoid_ops()?;
                vec![
                    d("associative", associative(n, mul)),
                    d("unit", unit_law(n, mul, unit)),
                    d("inverse", inverse_law(n, mul, unit, inv)),
                ]
            }
        })
    }
}

fn commutative(n: usize, op: &Operation) -> Verdict {
    for x in 0..n {
        for y in 0..n {
            if op.eval2(n, x, y) != op.eval2(n, y, x) {
                return Verdict::fails("x y = y x", [x, y]);
            }
        }
    }
    Verdict::Holds
}

fn associative(n: usize, op: &Operation) -> Verdict {
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if op.eval2(n, op.eval2(n, x, y), z) != op.eval2(n, x, op.eval2(n, y, z)) {
                    return Verdict::fails("(x y) z = x (y z)", [x, y, z]);
                }
            }
        }
    }
    Verdict::Holds
}

fn medial(n: usize, op: &Operation) -> Verdict {
    let m = |a, b| op.eval2(n, a, b);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for w in 0..n {
                    if m(m(x, y), m(z, w)) != m(m(x, z), m(y, w)) {
                        return Verdict::fails("(x y)(z w) = (x z)(y w)", [x, y, z, w]);
                    }
                }
            }
        }
    }
    Verdict::Holds
}

fn idempotent(n: usize, op: &Operation) -> Verdict {
    Verdict::from_witness("x x = x", (0..n).find(|&x| op.eval2(n, x, x) != x))
}

fn absorption(n: usize, meet: &Operation, join: &Operation) -> Verdict {
    for x in 0..n {
        for y in 0..n {
            if meet.eval2(n, x, join.eval2(n, x, y)) != x || join.eval2(n, x, meet.eval2(n, x, y)) != x {
                return Verdict::fails("absorption", [x, y]);
            }
        }
    }
    Verdict::Holds
}

fn unit_law(n: usize, op: &Operation, unit: usize) -> Verdict {
    Verdict::from_witness(
        "1 x = x = x 1",
        (0..n).find(|&x| op.eval2(n, unit, x) != x || op.eval2(n, x, unit) != x),
    )
}

fn inverse_law(n: usize, op: &Operation, unit: usize, inv: &Operation) -> Verdict {
    Verdict::from_witness(
        "x x^-1 = 1 = x^-1 x",
        (0..n).find(|&x| {
            let i = inv.table[x];
            op.eval2(n, x, i) != unit || op.eval2(n, i, x) != unit
        }),
    )
}

fn unary_monoid_law(n: usize, mul: &Operation, bar: &Operation) -> Verdict {
    let m = |a, b| mul.eval2(n, a, b);
    for x in 0..n {
        for y in 0..n {
            let yb = bar.table[y];
            if m(m(x, yb), y) != m(m(y, yb), x) {
                return Verdict::fails("x bar(y) y = y bar(y) x", [x, y]);
            }
        }
    }
    Verdict::Holds
}

fn cancellative(n: usize, op: &Operation) -> Verdict {
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            if let Some(b) = (0..n).find(|&b| op.eval2(n, x, b) == op.eval2(n, y, b)) {
                return Verdict::fails("x b = y b implies x = y", [x, y, b]);
            }
        }
    }
    Verdict::Holds
}

fn joint_cancellative(n: usize, a: &Operation, b: &Operation) -> Verdict {
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            if let Some(z) = (0..n).find(|&z| a.eval2(n, x, z) == a.eval2(n, y, z) && b.eval2(n, x, z) == b.eval2(n, y, z)) {
                return Verdict::fails("x b = y b and x + b = y + b imply x = y", [x, y, z]);
            }
        }
    }
    Verdict::Holds
}

/// First `(a, b, c)` for which two distinct `x` satisfy `eq(x, a, b, c)`, with
/// the two least solutions.
fn at_most_one_solution(n: usize, eq: impl Fn(usize, usize, usize, usize) -> bool) -> Option<[usize; 5]> {
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let mut sols = (0..n).filter(|&x| eq(x, a, b, c));
                if let (Some(x1), Some(x2)) = (sols.next(), sols.next()) {
                    return Some([a, b, c, x1, x2]);
                }
            }
        }
    }
    None
}

pub fn check_commutative(a: &OpAlgebra) -> Result<Verdict> {
    Ok(commutative(a.size, a.mul()?))
}

pub fn check_associative(a: &OpAlgebra) -> Result<Verdict> {
    Ok(associative(a.size, a.mul()?))
}

pub fn check_medial(a: &OpAlgebra) -> Result<Verdict> {
    Ok(medial(a.size, a.mul()?))
}

/// Witness `[x, y, b]`: the least `x != y` with some `b`, `x b = y b`.
pub fn check_cancellative(a: &OpAlgebra) -> Result<Verdict> {
    Ok(cancellative(a.size, a.mul()?))
}

/// Cancellation for the first two binary operations at once.
pub fn check_joint_cancellative(a: &OpAlgebra) -> Result<Verdict> {
    let (x, y) = a.two_binary()?;
    Ok(joint_cancellative(a.size, x, y))
}

pub fn check_unary_monoid_law(a: &OpAlgebra) -> Result<Verdict> {
    let (mul, _, bar) = a.unary_monoid_ops()?;
    Ok(unary_monoid_law(a.size, mul, bar))
}

/// `x (y v z) = (x y) v (x z)` for the first two binary operations.
pub fn check_distributive(a: &OpAlgebra) -> Result<Verdict> {
    let n = a.size;
    let (meet, join) = a.two_binary()?;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let l = meet.eval2(n, x, join.eval2(n, y, z));
                let r = join.eval2(n, meet.eval2(n, x, y), meet.eval2(n, x, z));
                if l != r {
                    return Ok(Verdict::fails("x ^ (y v z) = (x ^ y) v (x ^ z)", [x, y, z]));
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

/// `x b = a c` has at most one solution for all `a, b, c`. Witness
/// `[a, b, c, x1, x2]`.
pub fn check_unique_solutions(a: &OpAlgebra) -> Result<Verdict> {
    let n = a.size;
    let m = a.mul()?;
    Ok(Verdict::from_witness(
        "x b = a c has at most one solution",
        at_most_one_solution(n, |x, a_, b, c| m.eval2(n, x, b) == m.eval2(n, a_, c)),
    ))
}

/// The system `x b = a c`, `x + b = a + c` has at most one solution.
pub fn check_unique_joint_solutions(a: &OpAlgebra) -> Result<Verdict> {
    let n = a.size;
    let (m, p) = a.two_binary()?;
    Ok(Verdict::from_witness(
        "x b = a c, x + b = a + c has at most one solution",
        at_most_one_solution(n, |x, a_, b, c| m.eval2(n, x, b) == m.eval2(n, a_, c) && p.eval2(n, x, b) == p.eval2(n, a_, c)),
    ))
}

/// `x bar(b) b = a bar(b) c` has at most one solution.
pub fn check_unary_monoid_unique(a: &OpAlgebra) -> Result<Verdict> {
    let n = a.size;
    let (mul, _, bar) = a.unary_monoid_ops()?;
    let m = |x, y| mul.eval2(n, x, y);
    Ok(Verdict::from_witness(
        "x bar(b) b = a bar(b) c has at most one solution",
        at_most_one_solution(n, |x, a_, b, c| m(m(x, bar.table[b]), b) == m(m(a_, bar.table[b]), c)),
    ))
}

/// `h: A -> B` preserves every operation; operations are matched by position.
pub fn check_homomorphism(a: &OpAlgebra, b: &OpAlgebra, h: &[usize]) -> Result<Verdict> {
    if h.len() != a.size || h.iter().any(|&v| v >= b.size) {
        return Err(Error::NotAHomomorphism(format!(
            "expected a table of {} entries below {}, got {h:?}",
            a.size, b.size
        )));
    }
    if a.ops.len() != b.ops.len() || a.ops.iter().zip(&b.ops).any(|(x, y)| x.arity != y.arity) {
        return Err(Error::NotAHomomorphism("the two algebras have different signatures".into()));
    }
    let n = a.size;
    for (oa, ob) in a.ops.iter().zip(&b.ops) {
        let mut args = vec![0; oa.arity];
        for (i, &v) in oa.table.iter().enumerate() {
            let mut rest = i;
            for slot in args.iter_mut().rev() {
                *slot = h[rest % n];
                rest /= n;
            }
            if h[v] != ob.eval(b.size, &args) {
                let mut tuple = vec![0; oa.arity];
                let mut rest = i;
                for slot in tuple.iter_mut().rev() {
                    *slot = rest % n;
                    rest /= n;
                }
                return Ok(Verdict::fails(format!("h preserves {}", oa.symbol), tuple));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Outcome of [`classify_wm_object`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub variety: Variety,
    pub weakly_maltsev: bool,
    /// The equational criterion the verdict rests on.
    pub criterion: String,
    pub details: Vec<Detail>,
}

/// Decides whether `a` is a weakly Mal'tsev object of its variety by the
/// matching equational criterion; the other equivalent condition is reported
/// alongside as a cross-check.
pub fn classify_wm_object(a: &OpAlgebra) -> Result<Classification> {
    let (criterion, main, cross): (&str, Verdict, Vec<Detail>) = match a.variety {
        Variety::Cmag | Variety::CcmMagma | Variety::Csemigroup => (
            "cancellation",
            check_cancellative(a)?,
            vec![Detail::new("x b = a c has at most one solution", check_unique_solutions(a)?)],
        ),
        Variety::Dimagma => (
            "joint cancellation",
            check_joint_cancellative(a)?,
            vec![Detail::new("the two-equation system has at most one solution", check_unique_joint_solutions(a)?)],
        ),
        Variety::Lattice => (
            "distributivity",
            check_distributive(a)?,
            vec![Detail::new("joint cancellation of (meet, join)", check_joint_cancellative(a)?)],
        ),
        Variety::UnaryMonoid | Variety::Group => (
            "x bar(b) b = a bar(b) c has at most one solution",
            check_unary_monoid_unique(a)?,
            vec![Detail::new("x bar(y) y = y bar(y) x", check_unary_monoid_law(a)?)],
        ),
        Variety::Magma | Variety::Custom => {
            return Err(Error::UnsupportedVariety(format!(
                "no weakly Mal'tsev criterion for variety {}",
                a.variety
            )))
        }
    };
    let weakly_maltsev = main.holds();
    let mut details = vec![Detail::new(criterion, main)];
    details.extend(cross);
    Ok(Classification { variety: a.variety, weakly_maltsev, criterion: criterion.to_string(), details })
}

/// Conditions (2) cancellation and (3) unique solvability computed separately.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Equiv23 {
    pub cancellation: bool,
    pub unique_solutions: bool,
}

impl Equiv23 {
    pub fn agree(&self) -> bool {
        self.cancellation == self.unique_solutions
    }
}

pub fn equivalence_2_3_check(a: &OpAlgebra) -> Result<Equiv23> {
    if !check_commutative(a)?.holds() {
        return Err(Error::InvalidAlgebra("the binary operation must be commutative".into()));
    }
    Ok(Equiv23 { cancellation: check_cancellative(a)?.holds(), unique_solutions: check_unique_solutions(a)?.holds() })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Equiv23Sweep {
    pub size: usize,
    pub total: usize,
    pub agreeing: usize,
    pub cancellative: usize,
    /// Table of the first magma on which the two conditions differ.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_disagreement: Option<Vec<usize>>,
}

/// Runs [`equivalence_2_3_check`] on every commutative magma of size `n`.
pub fn equiv23_sweep(n: usize) -> Result<Equiv23Sweep> {
    let mut sweep = Equiv23Sweep { size: n, total: 0, agreeing: 0, cancellative: 0, first_disagreement: None };
    for a in commutative_magmas(n) {
        let e = equivalence_2_3_check(&a)?;
        sweep.total += 1;
        sweep.cancellative += usize::from(e.cancellation);
        if e.agree() {
            sweep.agreeing += 1;
        } else if sweep.first_disagreement.is_none() {
            sweep.first_disagreement = Some(a.mul()?.table.clone());
        }
    }
    Ok(sweep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn left_projection() -> OpAlgebra {
        OpAlgebra::new(2, Variety::Magma, vec![Operation::binary("*", 2, |x, _| x)]).unwrap()
    }

    fn meet2() -> OpAlgebra {
        OpAlgebra::new(2, Variety::Cmag, vec![Operation::binary("^", 2, |x, y| x & y)]).unwrap()
    }

    #[test]
    fn z3_is_commutative_and_medial() {
        let z = zn(3);
        assert!(check_commutative(&z).unwrap().holds());
        assert!(check_medial(&z).unwrap().holds());
        assert!(check_cancellative(&z).unwrap().holds());
    }

    #[test]
    fn left_projection_not_commutative() {
        let v = check_commutative(&left_projection()).unwrap();
        assert_eq!(v.violation().unwrap().witness, serde_json::json!([0, 1]));
    }

    #[test]
    fn meet_semilattice() {
        let a = meet2();
        assert!(check_commutative(&a).unwrap().holds());
        assert!(check_medial(&a).unwrap().holds());
        let v = check_cancellative(&a).unwrap();
        assert_eq!(v.violation().unwrap().witness, serde_json::json!([0, 1, 0]));
        let c = classify_wm_object(&a).unwrap();
        assert!(!c.weakly_maltsev);
        assert_eq!(c.criterion, "cancellation");
    }

    #[test]
    fn m3_is_not_jointly_cancellative() {
        let v = check_joint_cancellative(&m3()).unwrap();
        // two atoms against the third
        assert_eq!(v.violation().unwrap().witness, serde_json::json!([1, 2, 3]));
        assert!(!classify_wm_object(&m3()).unwrap().weakly_maltsev);
        assert!(classify_wm_object(&chain(2)).unwrap().weakly_maltsev);
    }

    #[test]
    fn missing_operation() {
        let a = OpAlgebra::new(2, Variety::Custom, vec![]).unwrap();
        assert!(matches!(check_commutative(&a), Err(Error::MissingOperation(_))));
    }

    #[test]
    fn bad_tables_are_rejected() {
        let e = OpAlgebra::new(2, Variety::Magma, vec![Operation::new("*", 2, vec![0, 1, 2, 0])]).unwrap_err();
        assert!(e.to_string().contains("table[2]"));
        let e = OpAlgebra::new(2, Variety::Cmag, vec![Operation::binary("*", 2, |x, _| x)]).unwrap_err();
        assert!(matches!(e, Error::InvalidAlgebra(_)));
    }

    #[test]
    fn variety_names_round_trip() {
        for v in Variety::ALL {
            assert_eq!(v.name().parse::<Variety>().unwrap(), v);
            assert_eq!(serde_json::to_value(v).unwrap(), serde_json::json!(v.name()));
        }
    }

    #[test]
    fn homomorphism_check() {
        let h: Vec<usize> = (0..4).map(|x| x % 2).collect();
        assert!(check_homomorphism(&zn(4), &zn(2), &h).unwrap().holds());
        assert!(!check_homomorphism(&zn(4), &zn(2), &[0, 1, 1, 0]).unwrap().holds());
        assert!(!check_homomorphism(&zn(4), &zn(2), &[0, 0, 1, 1]).unwrap().holds());
    }

    #[test]
    fn equiv23_small_cases() {
        let z2 = zn(2).with_variety(Variety::Cmag).unwrap();
        assert_eq!(equivalence_2_3_check(&z2).unwrap(), Equiv23 { cancellation: true, unique_solutions: true });
        let constant = OpAlgebra::new(2, Variety::Cmag, vec![Operation::binary("*", 2, |_, _| 0)]).unwrap();
        assert_eq!(equivalence_2_3_check(&constant).unwrap(), Equiv23 { cancellation: false, unique_solutions: false });
    }

    #[test]
    fn groups_satisfy_unary_monoid_law() {
        let g = unary_monoid_from_group(&zn(4)).unwrap();
        assert!(check_unary_monoid_law(&g).unwrap().holds());
        assert!(classify_wm_object(&g).unwrap().weakly_maltsev);
    }
}
