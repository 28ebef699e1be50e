use thiserror::Error;

use crate::weights::Definition;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("polynomial {0:?} is not irreducible over its ground field")]
    NotIrreducible(Vec<u32>),

    #[error("no default irreducible polynomial of degree {degree} over GF({p}^{s})")]
    NoDefaultPolynomial { p: u32, s: u32, degree: u32 },

    #[error("invalid field specification: {0}")]
    InvalidSpec(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{0} is not an element of the field")]
    InvalidElement(u32),

    #[error("elements are not linearly independent over the base field")]
    NotABasis,

    #[error("rank {r} out of range for a code of dimension {k}")]
    RankOutOfRange { r: usize, k: usize },

    #[error(
        "infeasible enumeration for {definition} at r = {r}: a subcode needs more than {cutoff} codewords"
    )]
    Infeasible {
        definition: Definition,
        r: usize,
        cutoff: u64,
    },

    #[error("matrix is singular over the base field")]
    SingularMatrix,

    #[error("isometry scalar must be nonzero")]
    ZeroScalar,

    #[error("operation requires a code of dimension at least one")]
    EmptyCode,

    #[error("code length must be at least one")]
    EmptyLength,

    #[error("{line}:{col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },

    #[error("{path}: {msg}")]
    Malformed { path: String, msg: String },

    #[error("{0}")]
    Io(String),
}
