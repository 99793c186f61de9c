//! The ternary operation `p(a, b, c)`: the unique `x` with `x b = a c`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::{Detail, Verdict};

use super::{check_homomorphism, OpAlgebra};

/// The unique `x` with `x b = a c`.
pub fn maltsev_solve(alg: &OpAlgebra, a: usize, b: usize, c: usize) -> Result<usize> {
    let n = alg.size();
    if a >= n || b >= n || c >= n {
        return Err(Error::InvalidAlgebra(format!("({a}, {b}, {c}) is outside a carrier of size {n}")));
    }
    let m = alg.mul()?;
    let target = m.eval2(n, a, c);
    let mut sols = (0..n).filter(|&x| m.eval2(n, x, b) == target);
    match (sols.next(), sols.next()) {
        (None, _) => Err(Error::NoSolution { a, b, c }),
        (Some(x), None) => Ok(x),
        (Some(_), Some(_)) => Err(Error::MultipleSolutions { a, b, c }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaltsevTable {
    pub size: usize,
    /// `p(a, b, c)` at index `(a n + b) n + c`.
    pub table: Vec<usize>,
    /// `p(a,b,b) = a`, `p(b,b,c) = c` and the homomorphism law.
    pub certificate: Vec<Detail>,
}

impl MaltsevTable {
    pub fn p(&self, a: usize, b: usize, c: usize) -> usize {
        let n = self.size;
        self.table[(a * n + b) * n + c]
    }

    pub fn certified(&self) -> bool {
        self.certificate.iter().all(Detail::holds)
    }
}

/// Solves `x b = a c` everywhere and certifies the result; the first unsolvable
/// or ambiguous `(a, b, c)` is the error.
pub fn maltsev_table(alg: &OpAlgebra) -> Result<MaltsevTable> {
    let n = alg.size();
    let mut table = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                table.push(maltsev_solve(alg, a, b, c)?);
            }
        }
    }
    let mut t = MaltsevTable { size: n, table, certificate: Vec::new() };
    let m = alg.mul()?;
    let mul = |x: usize, y: usize| m.eval2(n, x, y);
    let first = |f: &dyn Fn(usize, usize) -> bool| {
        (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).find(|&(x, y)| f(x, y))
    };
    let w = first(&|a, b| t.p(a, b, b) != a);
    let unit_right = Verdict::from_witness("p(a,b,b) = a", w);
    let w = first(&|b, c| t.p(b, b, c) != c);
    let unit_left = Verdict::from_witness("p(b,b,c) = c", w);
    let mut hom = Verdict::Holds;
    'outer: for i in 0..n * n * n {
        let (a, b, c) = (i / (n * n), (i / n) % n, i % n);
        for j in 0..n * n * n {
            let (a2, b2, c2) = (j / (n * n), (j / n) % n, j % n);
            if mul(t.p(a, b, c), t.p(a2, b2, c2)) != t.p(mul(a, a2), mul(b, b2), mul(c, c2)) {
                hom = Verdict::fails("p(a,b,c) p(a',b',c') = p(a a', b b', c c')", [a, b, c, a2, b2, c2]);
                break 'outer;
            }
        }
    }
    t.certificate = vec![
        Detail::new("p(a,b,b) = a", unit_right),
        Detail::new("p(b,b,c) = c", unit_left),
        Detail::new("p is a homomorphism", hom),
    ];
    Ok(t)
}

/// `p(h a, h b, h c) = h p(a, b, c)` for a homomorphism `h: A -> B`.
pub fn check_naturality_of_p(a: &OpAlgebra, b: &OpAlgebra, h: &[usize]) -> Result<Verdict> {
    if let Verdict::Fails(v) = check_homomorphism(a, b, h)? {
        return Err(Error::NotAHomomorphism(format!("{} fails at {}", v.condition, v.witness)));
    }
    let pa = maltsev_table(a)?;
    let pb = maltsev_table(b)?;
    let n = a.size();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if pb.p(h[x], h[y], h[z]) != h[pa.p(x, y, z)] {
                    return Ok(Verdict::fails("p(h a, h b, h c) = h p(a, b, c)", [x, y, z]));
                }
            }
        }
    }
    Ok(Verdict::Holds)
}
