//! Enumeration of maps `E -> D` subject to pointwise constraints.
//!
//! Every equation a multiplication or admissibility morphism has to satisfy
//! (`m e1 = alpha`, `m e2 = gamma`, `d m = ...`, `c m = ...`) constrains `m` one
//! point at a time, so the solution set is a product of per-point candidate
//! sets. Counting is exact; listing is capped.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::finmap::FinMap;

/// Listing cap used when the caller does not pick one.
pub const DEFAULT_CAP: usize = 1000;

/// Serialised as `"<n>"` or `">=<n>"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum SolutionCount {
    Exact(u128),
    /// Search stopped early, or the exact count overflowed.
    AtLeast(u128),
}

impl SolutionCount {
    pub fn is_zero(self) -> bool {
        self == SolutionCount::Exact(0)
    }

    pub fn is_unique(self) -> bool {
        self == SolutionCount::Exact(1)
    }

    pub fn at_most_one(self) -> bool {
        matches!(self, SolutionCount::Exact(0 | 1))
    }

    /// A lower bound on the number of solutions.
    pub fn lower_bound(self) -> u128 {
        match self {
            SolutionCount::Exact(n) | SolutionCount::AtLeast(n) => n,
        }
    }
}

impl fmt::Display for SolutionCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolutionCount::Exact(n) => write!(f, "{n}"),
            SolutionCount::AtLeast(n) => write!(f, ">={n}"),
        }
    }
}

impl From<SolutionCount> for String {
    fn from(c: SolutionCount) -> String {
        c.to_string()
    }
}

impl TryFrom<String> for SolutionCount {
    type Error = std::num::ParseIntError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        match s.strip_prefix(">=") {
            Some(n) => Ok(SolutionCount::AtLeast(n.parse()?)),
            None => Ok(SolutionCount::Exact(s.parse()?)),
        }
    }
}

/// Counted solutions. `maps` holds every solution when the count is at most the
/// cap, otherwise the two lexicographically least.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solutions {
    pub count: SolutionCount,
    pub maps: Vec<FinMap>,
}

impl Solutions {
    pub fn unique(&self) -> Option<&FinMap> {
        if self.count.is_unique() {
            self.maps.first()
        } else {
            None
        }
    }

    pub fn truncated(&self) -> bool {
        self.count != SolutionCount::Exact(self.maps.len() as u128)
    }
}

/// Per-point candidate sets for a map `points -> target`.
#[derive(Debug, Clone)]
pub struct PointwiseConstraints {
    target: usize,
    allowed: Vec<Vec<bool>>,
}

impl PointwiseConstraints {
    pub fn new(points: usize, target: usize) -> Self {
        PointwiseConstraints { target, allowed: vec![vec![true; target]; points] }
    }

    pub fn points(&self) -> usize {
        self.allowed.len()
    }

    /// Requires `m(x) = value`.
    pub fn fix(&mut self, x: usize, value: usize) {
        for (v, ok) in self.allowed[x].iter_mut().enumerate() {
            *ok &= v == value;
        }
    }

    /// Requires `leg(m(x)) = value`.
    pub fn require_leg(&mut self, x: usize, leg: &FinMap, value: usize) {
        for (v, ok) in self.allowed[x].iter_mut().enumerate() {
            *ok &= leg.apply(v) == value;
        }
    }

    pub fn candidates(&self, x: usize) -> Vec<usize> {
        (0..self.target).filter(|&v| self.allowed[x][v]).collect()
    }

    /// The first point left without candidates.
    pub fn first_empty(&self) -> Option<usize> {
        self.allowed.iter().position(|a| !a.iter().any(|&b| b))
    }

    pub fn solve(&self, cap: usize) -> Solutions {
        let cands: Vec<Vec<usize>> = (0..self.points()).map(|x| self.candidates(x)).collect();
        enumerate_product(&cands, self.target, cap)
    }
}

/// Counts and lists maps choosing one candidate per point, in lexicographic order.
pub fn enumerate_product(cands: &[Vec<usize>], target: usize, cap: usize) -> Solutions {
    let mut exact = Some(1u128);
    for c in cands {
        exact = exact.and_then(|n| n.checked_mul(c.len() as u128));
    }
    let count = match exact {
        Some(n) => SolutionCount::Exact(n),
        None => SolutionCount::AtLeast(u128::MAX),
    };
    let limit = match count {
        SolutionCount::Exact(n) if n <= cap as u128 => n as usize,
        _ => 2,
    };
    let mut maps = Vec::with_capacity(limit);
    if limit > 0 {
        let mut idx = vec![0usize; cands.len()];
        loop {
            let table = idx.iter().zip(cands).map(|(&i, c)| c[i]).collect();
            maps.push(FinMap::from_table_unchecked(target, table));
            if maps.len() == limit || !advance(&mut idx, cands) {
                break;
            }
        }
    }
    Solutions { count, maps }
}

// odometer step, last point varies fastest
fn advance(idx: &mut [usize], cands: &[Vec<usize>]) -> bool {
    for pos in (0..idx.len()).rev() {
        idx[pos] += 1;
        if idx[pos] < cands[pos].len() {
            return true;
        }
        idx[pos] = 0;
    }
    false
}
