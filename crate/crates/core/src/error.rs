use thiserror::Error;

/// Errors shared across the workspace. Every failure mode is reported
/// explicitly; no operation silently degrades to an approximation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element is not fixed by conjugation, so it has no real-embedding sign")]
    NotReal,
    #[error("degree {degree} exceeds the supported cap of {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("factorization budget exhausted on a degree-{degree} polynomial")]
    FactorizationIncomplete { degree: usize },
    #[error("operands live in different number fields")]
    FieldMismatch,
    #[error("operands are representations of different groups")]
    GroupMismatch,
    #[error("derived representation `{kind}` takes {expected} argument(s), got {got}")]
    ArityMismatch {
        kind: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("generated group exceeds the closure cap of {cap}")]
    TooLarge { cap: usize },
    #[error("failed to split an isotypic block after {retries} seeded retries")]
    SplitFailure { retries: u32 },
    #[error("module is not semisimple: central idempotents failed verification")]
    NotSemisimple,
    #[error("matrix is not Hermitian with respect to the field involution")]
    NotHermitian,
    #[error("representation is not absolutely irreducible over its field")]
    NotIrreducible,
    #[error("representation is not isomorphic to its conjugate")]
    NotSelfConjugate,
    #[error("sigma squared is not a scalar multiple of the identity")]
    SigmaNotScalar,
    #[error("both a symmetric and an alternating invariant form exist; classification is ambiguous")]
    Ambiguous,
    #[error("no supported field splits the representation into absolutely irreducible pieces")]
    SplittingFieldNotFound,
    #[error("Hodge datum has no nonzero pieces")]
    EmptyDatum,
    #[error("period point is not in the upper half plane under the designated embedding")]
    NotInUpperHalfPlane,
    #[error("quaternionic local system cannot underlie a weight-one polarized family")]
    QuaternionicImpossible,
    #[error("decomposition shape is outside the isotrivial classification: {0}")]
    UnexpectedShape(String),
    #[error("cover data is inconsistent: {0}")]
    NonIntegerGenus(String),
    #[error("ordered product of local monodromies is not the identity")]
    RelationViolated,
    #[error("local monodromy at position {index} has infinite order")]
    InfiniteOrderPresent { index: usize },
    #[error("matrix has determinant {determinant}, expected 1")]
    NotUnimodular { determinant: i64 },
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("generator {generator} maps to a singular matrix")]
    NotInvertible { generator: usize },
    #[error("relator {relator} does not evaluate to the identity")]
    RelatorViolated { relator: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("invalid field descriptor: {0}")]
    InvalidField(String),
    #[error("invalid representation data: {0}")]
    InvalidRepresentation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
