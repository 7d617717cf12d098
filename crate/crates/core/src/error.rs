use thiserror::Error;

/// Errors across all layers of the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("polynomial is reducible")]
    ReduciblePoly,
    #[error("polynomial degree does not match the requested extension degree")]
    DegreeMismatch,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("division by zero")]
    DivisionByZero,
    #[error("element does not belong to this field context")]
    MixedContexts,
    #[error("discrete logarithm of zero is undefined")]
    ZeroElement,
    #[error("field or group size exceeds the configured bound")]
    BoundExceeded,
    #[error("element is not a square")]
    NotASquare,
    #[error("index must be 1 or 2")]
    BadIndex,
    #[error("the identity element is excluded here")]
    IdentityElement,
    #[error("element does not have norm 1")]
    NotNormOne,
    #[error("element lies outside the group")]
    ElementOutsideGroup,
    #[error("claimed bijection failed")]
    BijectionFailure,
    #[error("element has more than one representation (internal bug)")]
    MultipleRepresentations,
    #[error("operation requires odd characteristic")]
    EvenCharacteristic,
    #[error("operation requires characteristic 3")]
    NotChar3,
    #[error("witness scan exhausted without success (internal bug)")]
    ExhaustedWithoutWitness,
    #[error("two computation routes disagree (internal bug)")]
    OracleMismatch,
    #[error("solution count exceeds the theoretical bound (internal bug)")]
    BoundViolation,
    #[error("algebraic identity violated: {0}")]
    IdentityViolated(&'static str),
    #[error("no witness found")]
    NoWitness,
    #[error("lifted certificate failed re-verification (internal bug)")]
    LiftVerificationFailed,
    #[error("precondition not satisfied: {0}")]
    PreconditionFailed(&'static str),
    #[error("shift elements must be pairwise distinct")]
    DuplicateShifts,
    #[error("element is not a member of the required set")]
    NotAMember,
    #[error("element lies in the base field")]
    ElementInBaseField,
    #[error("basis does not span a subspace of the required dimension")]
    BadBasisDimension,
    #[error("no compatible root for subfield embedding (internal bug)")]
    NoCompatibleRoot,
    #[error("certificate verification failed: {0}")]
    VerificationFailed(&'static str),
    #[error("no loop-free shift exists (internal bug)")]
    NoGoodShift,
    #[error("time budget exceeded")]
    BudgetExceeded,
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
