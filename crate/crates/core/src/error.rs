use thiserror::Error;

use crate::polarity::CompatViolation;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },

    #[error("model file line {line}: {msg}")]
    ModelFile { line: usize, msg: String },

    #[error("{what} has {actual} elements, bound is {limit}")]
    SizeBound {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("empty {0} carrier")]
    EmptyCarrier(&'static str),

    #[error("relations are not I-compatible ({} violation(s), first: {})", .0.len(), .0[0])]
    Incompatible(Vec<CompatViolation>),

    #[error("atom `{0}` has no valuation")]
    UnboundAtom(String),

    #[error("variable `{0}` is not bound in the environment")]
    UnboundVariable(String),

    #[error("formula has free variables: {}", .0.join(", "))]
    FreeVariables(Vec<String>),

    #[error("variable `{0}` is not bound in the formula")]
    UnknownVariable(String),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("pair is not a formal concept of this context")]
    NotAConcept,

    #[error("map is not monotone: {0}")]
    NonMonotone(String),

    #[error("atom vocabularies differ: {0}")]
    VocabularyMismatch(String),

    #[error("invalid unfolding spec: {0}")]
    InvalidSpec(String),

    #[error("generator set does not match the lattice: {0}")]
    GeneratorMismatch(String),

    #[error("{0}")]
    Precondition(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
