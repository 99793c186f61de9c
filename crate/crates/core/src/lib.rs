//! Local products, kernel pair constructions, kites and Mal'tsev-type
//! conditions, checked on finite sets and finite algebras.
//!
//! Everything is exhaustive: maps are index tables, limits are computed
//! pointwise with lexicographically ordered labels, and checkers return a
//! [`Verdict`] with the least witness instead of a bare boolean.

pub mod algebra;
pub mod error;
pub mod finmap;
pub mod format;
pub mod internal;
pub mod kite_condition;
pub mod limits;
pub mod report;
pub mod search;

pub use error::{Error, Result};
pub use finmap::{compose, ismember, FinMap, IsMemberResult};
pub use format::Structure;
pub use report::{Detail, Outcome, Report, Verdict};
pub use search::{SolutionCount, Solutions, DEFAULT_CAP};
