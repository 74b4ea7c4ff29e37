//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("zero polynomial has no Newton polytope")]
    ZeroPolynomial,

    #[error("cone closure contains a line; generating function requires a pointed cone")]
    NotPointed,

    #[error("kernel of the substitution matrix meets the cone nontrivially")]
    KernelMeetsCone,

    #[error("monomial specialization collapses a denominator factor: {0}")]
    SpecializationCollapse(String),

    #[error("evaluation hits a pole of denominator factor {0}")]
    PoleHit(String),

    #[error("term sum lies outside the reduction ring: a term carries {got} powers of (q-1) against {need} denominator factors")]
    NotInRingM { got: i64, need: usize },

    #[error("polytope does not translate into the given lattice subspace")]
    NotInSubspace,

    #[error("expected {expected} polytopes for a mixed volume in dimension {dim}, got {got}")]
    DimensionMismatch {
        expected: usize,
        got: usize,
        dim: usize,
    },

    #[error("family is degenerate: witness on face {face:?}, subset {subset:?} over F_{q}")]
    DegenerateFamily {
        face: Vec<usize>,
        subset: Vec<usize>,
        q: u64,
    },

    #[error("prime {0} divides a coefficient denominator or is otherwise excluded for this input")]
    BadPrime(u64),

    #[error("enumeration would exceed the size guard: {0}")]
    TooLarge(String),

    #[error("change of basis matrix is not unimodular")]
    NotUnimodular,

    #[error("finite field F_{p}^{e} is not tabulated (p <= 13, e <= 4 supported)")]
    FieldUnavailable { p: u64, e: u32 },

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
