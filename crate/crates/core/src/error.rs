use thiserror::Error;

/// Errors raised by constructors and operations whose preconditions fail.
///
/// Equational checks never return these: a failed law is a [`crate::Verdict`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("table[{index}] = {value} is out of range for codomain of size {cod}")]
    OutOfRange { index: usize, value: usize, cod: usize },

    #[error("table has length {len} but the domain has size {dom}")]
    LengthMismatch { len: usize, dom: usize },

    #[error("invalid splitting: {equation} fails at element {witness}")]
    InvalidSplitting { equation: &'static str, witness: usize },

    #[error("compatibility violated: {0}")]
    CompatibilityViolation(String),

    #[error("kite hypotheses violated: {0}")]
    HypothesisViolation(String),

    #[error("ill-typed tuple: {0}")]
    IllTyped(String),

    #[error("square {square} does not commute at element {witness}")]
    NonCommutingSquare { square: String, witness: usize },

    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    #[error("missing operation: {0}")]
    MissingOperation(String),

    #[error("x*{b} = {a}*{c} has no solution")]
    NoSolution { a: usize, b: usize, c: usize },

    #[error("x*{b} = {a}*{c} has more than one solution")]
    MultipleSolutions { a: usize, b: usize, c: usize },

    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),

    #[error("unsupported variety: {0}")]
    UnsupportedVariety(String),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("budget of {budget} exceeded")]
    BudgetExceeded { budget: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
