use thiserror::Error;

use crate::grade::Grade;
use crate::simplex::Simplex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },

    #[error("invalid rational `{0}` (expected an integer or p/q)")]
    Rational(String),

    #[error("dimension mismatch: expected {expected} coordinates, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("face-closure violation: facet {facet} of {simplex} is missing")]
    FaceClosure { simplex: Simplex, facet: Simplex },

    #[error("monotonicity violation: facet {facet} has grade {facet_grade}, not below grade {grade} of {simplex}")]
    Monotonicity {
        simplex: Simplex,
        grade: Grade,
        facet: Simplex,
        facet_grade: Grade,
    },

    #[error("duplicate simplex {0}")]
    DuplicateSimplex(Simplex),

    #[error("simplex {0} is not in the complex")]
    UnknownSimplex(Simplex),

    #[error("invalid simplex: {0}")]
    InvalidSimplex(String),

    #[error("collapse stuck at {remaining} simplices above the target; the vector field is not a consistent gradient")]
    CollapseStuck { remaining: usize },

    #[error("target grade {target} is not below {from}")]
    NotBelow { target: Grade, from: Grade },

    #[error("critical value set is empty")]
    EmptyCriticalSet,

    #[error("closure of the critical values exceeds the cap of {cap} grades")]
    ClosureTooLarge { cap: usize },

    #[error("grade {0} is not in the closed critical set")]
    NotInClosure(Grade),

    #[error("direction must be strictly positive, got {0}")]
    NonPositiveSlope(Grade),

    #[error("lines are not equivalent with respect to the closed critical set")]
    NotEquivalent,

    #[error("subcomplex is not contained in the supercomplex")]
    NotSubcomplex,

    #[error("invalid line literal: {0}")]
    LineLiteral(String),

    #[error("invalid gradient vector field: {0}")]
    InvalidField(String),
}
