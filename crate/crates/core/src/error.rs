use thiserror::Error;

use crate::knot::Violation;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cutoff too small: need degree {needed}, input stops at {available}")]
    CutoffTooSmall { needed: usize, available: usize },
    #[error("degree {0} is only known as a lower bound")]
    Inexact(usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("generator of degree 0 where none is allowed")]
    DegreeZeroGenerator,
    #[error("no non-negative integral solution at degree {0}")]
    NonIntegralSolution(usize),
    #[error("weight total {total} exceeds the bound {bound}")]
    WeightTooLarge { total: u32, bound: u32 },
    #[error("series is not divisible by 1 + t (degree {0})")]
    NotDivisible(usize),
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown hyperbolic atom `{0}`")]
    UnknownAtom(String),
    #[error("inadmissible expression: {}", fmt_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("unsupported symmetry: {0}")]
    UnsupportedSymmetry(String),
    #[error("unsupported class: {0}")]
    UnsupportedClass(String),
    #[error("missing symmetry data at {0:?}")]
    MissingSymmetryData(Vec<usize>),
    #[error("action does not have order {0}")]
    ActionOrderMismatch(u32),
    #[error("boundary composite is nonzero at degree {0}")]
    NonZeroComposite(usize),
    #[error("malformed complex: {0}")]
    MalformedComplex(String),
    #[error("complex needs {cells} cells, budget is {budget}")]
    CellBudgetExceeded { cells: usize, budget: usize },
    #[error("model has no finite cell realisation: {0}")]
    NotEvaluable(String),
    #[error("integer does not fit: {0}")]
    Overflow(String),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
}

fn fmt_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
