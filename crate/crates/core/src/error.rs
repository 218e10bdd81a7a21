use num_bigint::BigInt;
use thiserror::Error;

use crate::surface::SPlusId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("component {component}, circle {circle}: boundary word does not alternate between S+ and S- arcs")]
    AlternationViolation { component: usize, circle: usize },

    #[error("S+ component {0} occurs more than once")]
    DuplicateSPlusId(SPlusId),

    #[error("ordering data mismatch: {0}")]
    OrderingMismatch(String),

    #[error("{0} is not an S+ interval")]
    NotAnInterval(SPlusId),

    #[error("{0} is not an outgoing S+ component")]
    NotOutgoing(SPlusId),

    #[error("cannot glue {0} to itself")]
    SameInterval(SPlusId),

    #[error("arity mismatch: {outgoing} outgoing components against {incoming} incoming components")]
    ArityMismatch { outgoing: usize, incoming: usize },

    #[error("{0} is an S+ circle; gluing along circles is not supported")]
    CircleInGluingRegion(SPlusId),

    #[error(
        "parity pi_1/2 undefined: need #S+ intervals = 2 * #(boundary circles meeting S-) mod 4, \
         got {intervals} intervals and {sminus_circles} such circles"
    )]
    ParityUndefined { intervals: u64, sminus_circles: u64 },

    #[error("bases belong to different surfaces")]
    IncompatibleBases,

    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),

    #[error("torsion detected in block {block}: invariant factors {factors:?}")]
    TorsionDetected { block: String, factors: Vec<BigInt> },

    #[error("not a superalgebra homomorphism: {0}")]
    NotAHomomorphism(String),

    #[error("action relation violated: {0}")]
    ActionRelationViolation(String),

    #[error("sign/grading convention mismatch: {0}")]
    ConventionMismatch(String),

    #[error("parameter constraint violated: {0}")]
    ParameterConstraintViolated(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
