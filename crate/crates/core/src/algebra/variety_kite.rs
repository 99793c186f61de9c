//! Admissibility morphisms for kites of algebras, and a bounded search for
//! kites with more than one.

use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finmap::{compose, FinMap};
use crate::limits::{local_product, SplitCospan};
use crate::report::Verdict;
use crate::search::{SolutionCount, Solutions};

use super::{check_homomorphism, reflexive_relations, BinaryRelation, OpAlgebra, Operation};

/// `A -f-> B <-g- C` with sections `r`, `s` and legs `alpha`, `beta`, `gamma`
/// into `D`, all homomorphisms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct VarietyKite {
    pub d: OpAlgebra,
    pub a: OpAlgebra,
    pub b: OpAlgebra,
    pub c: OpAlgebra,
    pub f: FinMap,
    pub r: FinMap,
    pub g: FinMap,
    pub s: FinMap,
    pub alpha: FinMap,
    pub beta: FinMap,
    pub gamma: FinMap,
}

impl VarietyKite {
    pub fn cospan(&self) -> SplitCospan {
        SplitCospan { f: self.f.clone(), r: self.r.clone(), g: self.g.clone(), s: self.s.clone() }
    }

    /// Every map is a homomorphism between the right algebras and the kite
    /// equations hold.
    pub fn validate(&self) -> Result<()> {
        let maps: [(&str, &FinMap, &OpAlgebra, &OpAlgebra); 7] = [
            ("f", &self.f, &self.a, &self.b),
            ("r", &self.r, &self.b, &self.a),
            ("g", &self.g, &self.c, &self.b),
            ("s", &self.s, &self.b, &self.c),
            ("alpha", &self.alpha, &self.a, &self.d),
            ("beta", &self.beta, &self.b, &self.d),
            ("gamma", &self.gamma, &self.c, &self.d),
        ];
        for (name, h, src, dst) in maps {
            if h.dom() != src.size() || h.cod() != dst.size() {
                return Err(Error::DomainMismatch(format!(
                    "{name} should map {} elements into {}, got {h:?}",
                    src.size(),
                    dst.size()
                )));
            }
            if let Verdict::Fails(v) = check_homomorphism(src, dst, h.table())? {
                return Err(Error::NotAHomomorphism(format!("{name}: {} fails at {}", v.condition, v.witness)));
            }
        }
        self.cospan().validate()?;
        for (name, lhs, rhs) in [("alpha r = beta", &self.alpha, &self.r), ("gamma s = beta", &self.gamma, &self.s)] {
            if let Some(x) = compose(lhs, rhs)?.first_difference(&self.beta) {
                return Err(Error::HypothesisViolation(format!("{name} fails at {x}")));
            }
        }
        Ok(())
    }

    /// `E = A x_B C` with coordinatewise operations, labelled like the pullback.
    pub fn local_product_algebra(&self) -> Result<(OpAlgebra, Vec<(usize, usize)>)> {
        let lp = local_product(&self.cospan())?;
        let labels = lp.labels().to_vec();
        Ok((product_subalgebra(&self.a, &self.c, &labels)?, labels))
    }
}

/// The subalgebra of `a x c` on `elems`, which must be closed under every
/// operation; element `i` is `elems[i]`.
pub(crate) fn product_subalgebra(a: &OpAlgebra, c: &OpAlgebra, elems: &[(usize, usize)]) -> Result<OpAlgebra> {
    if a.ops().len() != c.ops().len() || a.ops().iter().zip(c.ops()).any(|(x, y)| x.arity != y.arity) {
        return Err(Error::NotAHomomorphism("the two algebras have different signatures".into()));
    }
    let m = elems.len();
    let index = |p: (usize, usize)| elems.binary_search(&p).ok();
    let mut ops = Vec::with_capacity(a.ops().len());
    for (oa, oc) in a.ops().iter().zip(c.ops()) {
        let k = oa.arity;
        let mut table = Vec::with_capacity(m.pow(k as u32));
        let mut left = vec![0; k];
        let mut right = vec![0; k];
        for mut i in 0..m.pow(k as u32) {
            for slot in (0..k).rev() {
                let (x, y) = elems[i % m];
                i /= m;
                left[slot] = x;
                right[slot] = y;
            }
            let p = (oa.eval(a.size(), &left), oc.eval(c.size(), &right));
            let j = index(p).ok_or_else(|| {
                Error::InvalidAlgebra(format!("{} leaves the subset at {:?}", oa.symbol, p))
            })?;
            table.push(j);
        }
        ops.push(Operation::new(oa.symbol.clone(), k, table));
    }
    OpAlgebra::new(m, a.variety(), ops)
}

/// Homomorphisms `src -> dst` extending the partial assignment `fixed`, in
/// lexicographic order. Known values are pushed through every operation before
/// each branch.
pub(crate) fn homomorphisms(src: &OpAlgebra, dst: &OpAlgebra, fixed: &[Option<usize>], cap: usize) -> Solutions {
    let mut state = Search { src, dst, cap, count: 0, maps: Vec::new() };
    if let Some(start) = state.propagate(fixed.to_vec()) {
        state.branch(start);
    }
    let count = SolutionCount::Exact(state.count);
    if state.count > cap as u128 {
        state.maps.truncate(2);
    }
    Solutions { count, maps: state.maps }
}

struct Search<'a> {
    src: &'a OpAlgebra,
    dst: &'a OpAlgebra,
    cap: usize,
    count: u128,
    maps: Vec<FinMap>,
}

impl Search<'_> {
    fn propagate(&self, mut phi: Vec<Option<usize>>) -> Option<Vec<Option<usize>>> {
        let n = self.src.size();
        loop {
            let mut changed = false;
            for (os, od) in self.src.ops().iter().zip(self.dst.ops()) {
                let k = os.arity;
                let mut args = vec![0; k];
                let mut image = vec![0; k];
                'tuple: for (i, &out) in os.table.iter().enumerate() {
                    let mut rest = i;
                    for slot in (0..k).rev() {
                        args[slot] = rest % n;
                        rest /= n;
                        match phi[args[slot]] {
                            Some(v) => image[slot] = v,
                            None => continue 'tuple,
                        }
                    }
                    let want = od.eval(self.dst.size(), &image);
                    match phi[out] {
                        Some(v) if v != want => return None,
                        Some(_) => {}
                        None => {
                            phi[out] = Some(want);
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                return Some(phi);
            }
        }
    }

    fn branch(&mut self, phi: Vec<Option<usize>>) {
        match phi.iter().position(Option::is_none) {
            None => {
                self.count += 1;
                if self.maps.len() <= self.cap {
                    let table = phi.into_iter().map(|v| v.expect("assigned")).collect();
                    self.maps.push(FinMap::from_table_unchecked(self.dst.size(), table));
                }
            }
            Some(x) => {
                for v in 0..self.dst.size() {
                    let mut next = phi.clone();
                    next[x] = Some(v);
                    if let Some(next) = self.propagate(next) {
                        self.branch(next);
                    }
                }
            }
        }
    }
}

/// Homomorphisms `phi: A x_B C -> D` with `phi e1 = alpha` and `phi e2 = gamma`.
pub fn admissibility_count_variety(k: &VarietyKite, cap: usize) -> Result<Solutions> {
    k.validate()?;
    let lp = local_product(&k.cospan())?;
    let e = product_subalgebra(&k.a, &k.c, lp.labels())?;
    let mut fixed = vec![None; e.size()];
    let legs = [(&lp.e1, &k.alpha), (&lp.e2, &k.gamma)];
    for (inj, leg) in legs {
        for x in 0..inj.dom() {
            let (p, v) = (inj.apply(x), leg.apply(x));
            match fixed[p] {
                Some(w) if w != v => return Ok(Solutions { count: SolutionCount::Exact(0), maps: Vec::new() }),
                _ => fixed[p] = Some(v),
            }
        }
    }
    Ok(homomorphisms(&e, &k.d, &fixed, cap))
}

/// Outcome of [`find_witness_kite`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessSearch {
    /// A kite over `D` with at least two admissibility morphisms.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<VarietyKite>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<SolutionCount>,
    /// Kites whose admissibility count was computed.
    pub examined: usize,
    /// Whether the whole family was searched; `false` means the budget ran out.
    pub exhausted: bool,
}

impl WitnessSearch {
    pub fn found(&self) -> bool {
        self.witness.is_some()
    }
}

/// The subalgebra of `D x D` carried by a compatible relation, with the
/// two projections and the diagonal.
fn relation_algebra(d: &OpAlgebra, rel: &BinaryRelation) -> Result<(OpAlgebra, [FinMap; 2], FinMap)> {
    let pairs = rel.pairs();
    let alg = product_subalgebra(d, d, &pairs)?;
    let n = d.size();
    let p1 = FinMap::new(n, pairs.iter().map(|p| p.0).collect())?;
    let p2 = FinMap::new(n, pairs.iter().map(|p| p.1).collect())?;
    let diag = FinMap::from_fn(n, pairs.len(), |x| pairs.binary_search(&(x, x)).expect("reflexive"))?;
    Ok((alg, [p1, p2], diag))
}

/// Searches kites over `d` with `B = D`, `beta = 1`, `A` and `C` compatible
/// reflexive relations, `f, g` projections, `r = s` the diagonal, and `alpha`,
/// `gamma` any homomorphisms restricting to the identity on the diagonal.
/// Stops at the first kite with two or more admissibility morphisms, or after
/// `budget` kites.
pub fn find_witness_kite(d: &OpAlgebra, budget: usize) -> Result<WitnessSearch> {
    let n = d.size();
    let mut out = WitnessSearch { witness: None, count: None, examined: 0, exhausted: false };
    let rels = match reflexive_relations(d, budget.max(1)).into_result() {
        Ok(r) => r,
        Err(_) => return Ok(out),
    };
    let mut pieces = Vec::with_capacity(rels.len());
    for rel in &rels {
        let (alg, proj, diag) = relation_algebra(d, rel)?;
        let mut fixed = vec![None; alg.size()];
        for x in 0..n {
            fixed[diag.apply(x)] = Some(x);
        }
        let legs = homomorphisms(&alg, d, &fixed, usize::MAX);
        pieces.push((alg, proj, diag, legs.maps));
    }
    let id = FinMap::identity(n);
    for (a, a_proj, a_diag, a_legs) in &pieces {
        for (c, c_proj, c_diag, c_legs) in &pieces {
            for f in a_proj {
                for g in c_proj {
                    for alpha in a_legs {
                        for gamma in c_legs {
                            if out.examined >= budget {
                                return Ok(out);
                            }
                            let k = VarietyKite {
                                d: d.clone(),
                                a: a.clone(),
                                b: d.clone(),
                                c: c.clone(),
                                f: f.clone(),
                                r: a_diag.clone(),
                                g: g.clone(),
                                s: c_diag.clone(),
                                alpha: alpha.clone(),
                                beta: id.clone(),
                                gamma: gamma.clone(),
                            };
                            out.examined += 1;
                            let sols = admissibility_count_variety(&k, 2)?;
                            if !sols.count.at_most_one() {
                                out.count = Some(sols.count);
                                out.witness = Some(k);
                                return Ok(out);
                            }
                        }
                    }
                }
            }
        }
    }
    out.exhausted = true;
    Ok(out)
}
