//! Finite sets `{0, .., n-1}` and maps between them stored as index tables.
//!
//! A [`FinMap`] from `n` to `m` is the index vector `u` of length `n` with every
//! entry below `m`; composition is `(u . v)(j) = u(v(j))`. This is the category
//! of index vectors used by array languages, and [`ismember`] is its membership
//! query.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A map of finite sets, `dom -> cod`, as an index table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "crate::format::FinMapFile", into = "crate::format::FinMapFile")]
pub struct FinMap {
    cod: usize,
    table: Vec<usize>,
}

impl FinMap {
    /// Builds a map `table.len() -> cod`, rejecting out-of-range entries.
    pub fn new(cod: usize, table: Vec<usize>) -> Result<Self> {
        if let Some((index, &value)) = table.iter().enumerate().find(|(_, &v)| v >= cod) {
            return Err(Error::OutOfRange { index, value, cod });
        }
        Ok(FinMap { cod, table })
    }

    /// Like [`FinMap::new`] but also checks the declared domain size.
    pub fn with_dom(dom: usize, cod: usize, table: Vec<usize>) -> Result<Self> {
        if table.len() != dom {
            return Err(Error::LengthMismatch { len: table.len(), dom });
        }
        Self::new(cod, table)
    }

    pub(crate) fn from_table_unchecked(cod: usize, table: Vec<usize>) -> Self {
        debug_assert!(table.iter().all(|&v| v < cod));
        FinMap { cod, table }
    }

    pub fn identity(n: usize) -> Self {
        FinMap { cod: n, table: (0..n).collect() }
    }

    /// The constant map `dom -> cod` with value `value`.
    pub fn constant(dom: usize, cod: usize, value: usize) -> Result<Self> {
        Self::new(cod, vec![value; dom])
    }

    /// The unique map into the one-point set.
    pub fn to_terminal(dom: usize) -> Self {
        FinMap { cod: 1, table: vec![0; dom] }
    }

    /// Builds a map by evaluating `f` on every element of the domain.
    pub fn from_fn(dom: usize, cod: usize, f: impl FnMut(usize) -> usize) -> Result<Self> {
        Self::new(cod, (0..dom).map(f).collect())
    }

    pub fn dom(&self) -> usize {
        self.table.len()
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn into_table(self) -> Vec<usize> {
        self.table
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `self . f`, i.e. first `f` then `self`.
    pub fn after(&self, f: &FinMap) -> Result<FinMap> {
        compose(self, f)
    }

    pub fn is_identity(&self) -> bool {
        self.cod == self.dom() && self.table.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_mono(&self) -> bool {
        let mut seen = vec![false; self.cod];
        self.table.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_epi(&self) -> bool {
        let mut hit = vec![false; self.cod];
        for &v in &self.table {
            hit[v] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_bijection(&self) -> bool {
        self.dom() == self.cod && self.is_mono()
    }

    /// The canonical section of a surjection: each element goes to its least
    /// preimage. `None` when the map is not surjective.
    pub fn split_epi_section(&self) -> Option<FinMap> {
        let mut section = vec![None; self.cod];
        for (x, &y) in self.table.iter().enumerate() {
            section[y].get_or_insert(x);
        }
        let table = section.into_iter().collect::<Option<Vec<_>>>()?;
        Some(FinMap { cod: self.dom(), table })
    }

    /// The least index at which `self` and `other` differ, if any.
    pub fn first_difference(&self, other: &FinMap) -> Option<usize> {
        self.table.iter().zip(&other.table).position(|(a, b)| a != b)
    }

    /// Image as a membership mask over the codomain.
    pub fn image_mask(&self) -> Vec<bool> {
        let mut hit = vec![false; self.cod];
        for &v in &self.table {
            hit[v] = true;
        }
        hit
    }

    /// The elements of the domain sent to `y`, in increasing order.
    pub fn fibre(&self, y: usize) -> Vec<usize> {
        (0..self.dom()).filter(|&x| self.table[x] == y).collect()
    }
}

impl fmt::Debug for FinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{} {:?}", self.dom(), self.cod, self.table)
    }
}

/// `g . f`: first `f`, then `g`.
pub fn compose(g: &FinMap, f: &FinMap) -> Result<FinMap> {
    if f.cod != g.dom() {
        return Err(Error::DomainMismatch(format!(
            "cannot compose {}->{} after {}->{}",
            g.dom(),
            g.cod,
            f.dom(),
            f.cod
        )));
    }
    Ok(FinMap {
        cod: g.cod,
        table: f.table.iter().map(|&j| g.table[j]).collect(),
    })
}

/// Composes a chain right to left: `compose_all(&[h, g, f]) = h . g . f`.
pub fn compose_all(maps: &[&FinMap]) -> Result<FinMap> {
    let (last, rest) = maps
        .split_last()
        .ok_or_else(|| Error::DomainMismatch("empty composition".into()))?;
    rest.iter().rev().try_fold((*last).clone(), |acc, g| compose(g, &acc))
}

/// Result of `[k, p] = ismember(f, u)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsMemberResult {
    pub flags: Vec<bool>,
    pub positions: Vec<Option<usize>>,
}

/// For each entry of `f`, whether it occurs in `u` and the least index where it does.
pub fn ismember(f: &[usize], u: &[usize]) -> IsMemberResult {
    let mut first: HashMap<usize, usize> = HashMap::with_capacity(u.len());
    for (j, &v) in u.iter().enumerate() {
        first.entry(v).or_insert(j);
    }
    let positions: Vec<Option<usize>> = f.iter().map(|v| first.get(v).copied()).collect();
    let flags = positions.iter().map(Option::is_some).collect();
    IsMemberResult { flags, positions }
}

/// Reads `ismember(f, u)` as the pullback of `f` along the mono `u`: returns
/// the projections `(find(k), p(k))` from the apex into `dom f` and `dom u`.
///
/// Both maps must share a codomain and `u` must be injective.
pub fn ismember_pullback(f: &FinMap, u: &FinMap) -> Result<(FinMap, FinMap)> {
    if f.cod != u.cod {
        return Err(Error::DomainMismatch(format!(
            "codomains differ: {} vs {}",
            f.cod, u.cod
        )));
    }
    if !u.is_mono() {
        return Err(Error::DomainMismatch(
            "ismember reads as a pullback only when u has unique entries".into(),
        ));
    }
    let hit = ismember(&f.table, &u.table);
    let (found, pos): (Vec<usize>, Vec<usize>) = hit
        .positions
        .iter()
        .enumerate()
        .filter_map(|(i, p)| p.map(|j| (i, j)))
        .unzip();
    Ok((
        FinMap::from_table_unchecked(f.dom(), found),
        FinMap::from_table_unchecked(u.dom(), pos),
    ))
}

/// Whether `x -> (p1(x), p2(x))` is injective.
pub fn jointly_monic(p1: &FinMap, p2: &FinMap) -> Result<bool> {
    Ok(jointly_monic_witness(p1, p2)?.is_none())
}

/// The lexicographically first pair `x < y` identified by both maps.
pub fn jointly_monic_witness(p1: &FinMap, p2: &FinMap) -> Result<Option<(usize, usize)>> {
    if p1.dom() != p2.dom() {
        return Err(Error::DomainMismatch(format!(
            "jointly monic pair needs a common domain, got {} and {}",
            p1.dom(),
            p2.dom()
        )));
    }
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    let mut best: Option<(usize, usize)> = None;
    for x in 0..p1.dom() {
        if let Some(&y) = seen.get(&(p1.table[x], p2.table[x])) {
            if best.is_none_or(|b| (y, x) < b) {
                best = Some((y, x));
            }
        } else {
            seen.insert((p1.table[x], p2.table[x]), x);
        }
    }
    Ok(best)
}

/// Whether the images of `e1` and `e2` cover their common codomain.
pub fn jointly_epic(e1: &FinMap, e2: &FinMap) -> Result<bool> {
    Ok(jointly_epic_witness(e1, e2)?.is_none())
}

/// The least codomain element missed by both maps.
pub fn jointly_epic_witness(e1: &FinMap, e2: &FinMap) -> Result<Option<usize>> {
    if e1.cod != e2.cod {
        return Err(Error::DomainMismatch(format!(
            "jointly epic pair needs a common codomain, got {} and {}",
            e1.cod, e2.cod
        )));
    }
    let a = e1.image_mask();
    let b = e2.image_mask();
    Ok((0..e1.cod).find(|&y| !a[y] && !b[y]))
}
