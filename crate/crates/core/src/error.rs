use thiserror::Error;

use crate::grading::Degree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("differentials do not compose to zero")]
    CompositionNotZero,
    #[error("map is not well defined: {0}")]
    IllDefinedMap(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error(
        "grading is not pointed: generator {index} has degree {degree} of weight {weight} <= 0"
    )]
    NotPointed {
        index: usize,
        degree: Degree,
        weight: String,
    },
    #[error("grading signature is invalid: {0}")]
    InvalidSignature(String),
    #[error("element is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("operands live over different rings")]
    RingMismatch,
    #[error("complex is not perfect: term {index} has relations")]
    NotPerfect { index: i64 },
    #[error("decomposition set of degree {degree} is not certified finite: {reason}")]
    UnboundedDecomposition { degree: Degree, reason: String },
    #[error("tower is not stabilized at degree {degree}, index {index}")]
    NotStabilized { degree: Degree, index: i64 },
    #[error("precondition not certified: {0}")]
    PreconditionNotCertified(String),
    #[error("generator {generator} has mixed-degree coaction image")]
    MixedGeneratorImage { generator: String },
    #[error("coaction axiom violated ({diagram}): {detail}")]
    AxiomViolation { diagram: String, detail: String },
    #[error("element leaves the degree window: {0}")]
    OutOfWindow(String),
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
