//! Standard small algebras and exhaustive enumerators.

use crate::error::{Error, Result};

use super::{OpAlgebra, Operation, Variety};

/// `(Z_n, +, -, 0)` as a group.
pub fn zn(n: usize) -> OpAlgebra {
    let ops = vec![
        Operation::binary("+", n, |x, y| (x + y) % n),
        Operation::from_fn("-", n, 1, |a| (n - a[0]) % n),
        Operation::new("0", 0, vec![0]),
    ];
    OpAlgebra::new(n, Variety::Group, ops).expect("Z_n is a group")
}

/// `(Z_n, +)` as a commutative magma.
pub fn zn_magma(n: usize) -> OpAlgebra {
    OpAlgebra::new(n, Variety::Cmag, vec![Operation::binary("+", n, |x, y| (x + y) % n)]).expect("addition commutes")
}

/// A group read as a unary monoid with the inverse as bar.
pub fn unary_monoid_from_group(g: &OpAlgebra) -> Result<OpAlgebra> {
    if g.variety() != Variety::Group {
        return Err(Error::UnsupportedVariety(format!("expected a group, got {}", g.variety())));
    }
    g.with_variety(Variety::UnaryMonoid)
}

/// The lattice of a partial order given by `leq`, with meet first and join second.
pub fn lattice_from_order(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<OpAlgebra> {
    let bound = |x: usize, y: usize, lower: bool| -> Result<usize> {
        let below = |z: usize, w: usize| if lower { leq(z, w) } else { leq(w, z) };
        let cands: Vec<usize> = (0..n).filter(|&z| below(z, x) && below(z, y)).collect();
        cands
            .iter()
            .copied()
            .find(|&z| cands.iter().all(|&w| below(w, z)))
            .ok_or_else(|| Error::InvalidAlgebra(format!("{x} and {y} have no {}", if lower { "meet" } else { "join" })))
    };
    let mut meet = Vec::with_capacity(n * n);
    let mut join = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            meet.push(bound(x, y, true)?);
            join.push(bound(x, y, false)?);
        }
    }
    OpAlgebra::new(n, Variety::Lattice, vec![Operation::new("meet", 2, meet), Operation::new("join", 2, join)])
}

pub fn chain(n: usize) -> OpAlgebra {
    lattice_from_order(n, |x, y| x <= y).expect("chains are lattices")
}

/// Subsets of a 2-element set, as bitmasks.
pub fn two_by_two() -> OpAlgebra {
    lattice_from_order(4, |x, y| x & y == x).expect("boolean lattice")
}

/// Bottom 0, atoms 1, 2, 3, top 4.
pub fn m3() -> OpAlgebra {
    lattice_from_order(5, |x, y| x == y || x == 0 || y == 4).expect("M3 is a lattice")
}

/// `0 < 1 < 2 < 4` and `0 < 3 < 4`.
pub fn n5() -> OpAlgebra {
    let le = |x: usize, y: usize| x == y || x == 0 || y == 4 || (x == 1 && y == 2);
    lattice_from_order(5, le).expect("N5 is a lattice")
}

/// `2 x 2` with a new top 4.
pub fn two_by_two_with_top() -> OpAlgebra {
    lattice_from_order(5, |x, y| y == 4 || (x < 4 && y < 4 && x & y == x)).expect("lattice")
}

/// `2 x 2` shifted up by one, with a new bottom 0.
pub fn two_by_two_with_bottom() -> OpAlgebra {
    lattice_from_order(5, |x, y| x == 0 || (x > 0 && y > 0 && (x - 1) & (y - 1) == x - 1)).expect("lattice")
}

/// Named lattices of size at most 5 with their distributivity.
pub fn standard_lattices() -> Vec<(&'static str, OpAlgebra, bool)> {
    vec![
        ("1", chain(1), true),
        ("2", chain(2), true),
        ("3", chain(3), true),
        ("4", chain(4), true),
        ("5", chain(5), true),
        ("2x2", two_by_two(), true),
        ("2x2+top", two_by_two_with_top(), true),
        ("2x2+bottom", two_by_two_with_bottom(), true),
        ("M3", m3(), false),
        ("N5", n5(), false),
    ]
}

/// Every associative table on `n` elements with `0` as two-sided unit, in
/// lexicographic order of the table.
pub fn monoids(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return Vec::new();
    }
    let free: Vec<usize> = (0..n * n).filter(|&i| i / n != 0 && i % n != 0).collect();
    let mut table: Vec<usize> = (0..n * n).map(|i| if i / n == 0 { i % n } else if i % n == 0 { i / n } else { 0 }).collect();
    let mut out = Vec::new();
    loop {
        let assoc = (0..n).all(|x| {
            (0..n).all(|y| (0..n).all(|z| table[table[x * n + y] * n + z] == table[x * n + table[y * n + z]]))
        });
        if assoc {
            out.push(table.clone());
        }
        // odometer over the free cells, last cell fastest
        let mut pos = free.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            table[free[pos]] += 1;
            if table[free[pos]] < n {
                break;
            }
            table[free[pos]] = 0;
        }
    }
}

/// A monoid table with unit `0` as a group with inverse, if it is one.
pub fn group_from_monoid(n: usize, table: &[usize]) -> Option<OpAlgebra> {
    let inv: Option<Vec<usize>> = (0..n).map(|x| (0..n).find(|&y| table[x * n + y] == 0 && table[y * n + x] == 0)).collect();
    let ops = vec![Operation::new("*", 2, table.to_vec()), Operation::new("inv", 1, inv?), Operation::new("1", 0, vec![0])];
    OpAlgebra::new(n, Variety::Group, ops).ok()
}

/// All `n^(n(n+1)/2)` commutative magmas on `n` elements.
pub fn commutative_magmas(n: usize) -> impl Iterator<Item = OpAlgebra> {
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|x| (x..n).map(move |y| (x, y))).collect();
    let total = if n == 0 { 1 } else { n.pow(cells.len() as u32) };
    (0..total).map(move |mut code| {
        let mut table = vec![0; n * n];
        for &(x, y) in cells.iter().rev() {
            let v = code % n.max(1);
            code /= n.max(1);
            table[x * n + y] = v;
            table[y * n + x] = v;
        }
        OpAlgebra::new(n, Variety::Cmag, vec![Operation::new("*", 2, table)]).expect("symmetric table")
    })
}
